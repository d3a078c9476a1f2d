#pragma once

// Independent reference computations. Nothing here calls the library's
// series kernel; only the scalar and polynomial types are shared.

#include <random>
#include <vector>

#include "loopvir/poly.hpp"
#include "loopvir/scalar.hpp"

namespace oracle {

using loopvir::CoeffPoly;
using loopvir::GaussianRational;
using loopvir::Rational;

/// Product of two dense coefficient vectors, truncated to length n+1.
template <class R>
std::vector<R> mul(const std::vector<R>& a, const std::vector<R>& b, int n, const R& zero) {
  std::vector<R> c(static_cast<std::size_t>(n) + 1, zero);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= n; ++i) {
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

/// b_0..b_n of the compositional inverse of f = a_1 z + a_2 z^2 + ...,
/// solving [w^n] f(g(w)) = [n == 1] one coefficient at a time.
/// inv_a1 is 1/a_1 in the ring.
template <class R>
std::vector<R> naive_reversion(const std::vector<R>& a, int n, const R& inv_a1, const R& zero) {
  std::vector<R> b(static_cast<std::size_t>(n) + 1, zero);
  b[1] = inv_a1;
  for (int k = 2; k <= n; ++k) {
    // [w^k] sum_{m>=2} a_m g^m with b_k still zero.
    R acc = zero;
    std::vector<R> power = b;
    for (int m = 2; m <= k && m < static_cast<int>(a.size()); ++m) {
      power = mul(power, b, k, zero);
      acc += a[static_cast<std::size_t>(m)] * power[static_cast<std::size_t>(k)];
    }
    b[static_cast<std::size_t>(k)] = -(acc * inv_a1);
  }
  return b;
}

/// binom(p, j) for rational p.
inline Rational binomial(const Rational& p, int j) {
  Rational out(1);
  for (int i = 0; i < j; ++i) out *= (p - Rational(i)) * Rational(1, i + 1);
  return out;
}

inline Rational catalan(int n) { return binomial(Rational(2 * n), n) * Rational(1, n + 1); }

/// 6 (b_3/b_1 - (b_2/b_1)^2): the Schwarzian of w -> sum b_j w^j at w = 0.
template <class R>
R schwarzian_at_zero(const R& b1, const R& b2, const R& b3, const R& inv_b1) {
  const R c2 = b2 * inv_b1;
  const R c3 = b3 * inv_b1;
  return (c3 - c2 * c2) * GaussianRational(6);
}

inline Rational random_rational(std::mt19937& rng, int num, int den) {
  std::uniform_int_distribution<int> n(-num, num);
  std::uniform_int_distribution<int> d(1, den);
  return Rational(n(rng), d(rng));
}

inline GaussianRational random_gaussian(std::mt19937& rng, int num, int den) {
  return {random_rational(rng, num, den), random_rational(rng, num, den)};
}

}  // namespace oracle
