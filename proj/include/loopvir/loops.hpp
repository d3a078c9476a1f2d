#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loopvir/neretin.hpp"
#include "loopvir/poly.hpp"
#include "loopvir/report.hpp"
#include "loopvir/series.hpp"
#include "loopvir/witt.hpp"

namespace loopvir {

enum class LoopKind { interior_series, exterior_series, circle, perturbed_disk };

/// What to do with interior data whose coefficients exceed |u_n| <= n+1,
/// which no loop can produce.
enum class CoefficientPolicy { warn, reject };

/// A Jordan curve separating 0 and infinity, described by the normalized
/// interior map f(z) = Lambda z (1 + sum u_n z^n) or, after tau, by the
/// expansion of g^{-1} at infinity. S is GaussianRational (exact) or Complex.
template <class S>
struct Loop {
  LoopKind kind = LoopKind::interior_series;
  S lambda{};
  /// u_1, u_2, ...; for polynomial maps the list is complete.
  std::vector<S> u;
  /// circle: center and radius.
  S center{};
  S radius{};
  /// perturbed disk z + eps z^m.
  S eps{};
  int m = 0;
  /// exterior_series: g^{-1}(z) = inner(1/z).
  std::optional<SeriesAtInfinity<S>> exterior;
  std::vector<std::string> warnings;

  bool has_interior() const { return kind != LoopKind::exterior_series; }
  std::string describe() const;
};

template <class S>
Loop<S> make_circle(const S& center, const S& radius);
template <class S>
Loop<S> make_perturbed_disk(const S& eps, int m);
template <class S>
Loop<S> make_interior_series(const S& lambda, std::vector<S> u, CoefficientPolicy policy = CoefficientPolicy::warn);

/// `circle:a,r`, `pdisk:eps,m` or `iseries:Lambda;u1,u2,...`; scalars are
/// p/q, decimals, or Gaussian forms like 1/8+1/8*i.
template <class S>
Loop<S> parse_loop(std::string_view spec, CoefficientPolicy policy = CoefficientPolicy::warn);

/// u_1..u_N (zeros past the end of a polynomial map).
template <class S>
std::vector<S> interior_coords(const Loop<S>& loop, int N);
/// f as a series at 0 known through z^order.
template <class S>
TruncSeries<S> interior_map(const Loop<S>& loop, int order);
/// Lambda and u_1..u_N.
template <class S>
Assignment<S> coordinate_assignment(const Loop<S>& loop, int N);

/// The loop lambda * gamma for real lambda > 0.
template <class S>
Loop<S> scale(const Loop<S>& loop, const S& factor);

/// P_0..P_K at the loop, by evaluating the symbolic Neretin table.
template <class S>
std::vector<S> eval_P(const Loop<S>& loop, int K);
template <class S>
std::vector<S> eval_P(const Loop<S>& loop, const NeretinTable& table);

/// Exterior data of tau(gamma): g^{-1}(z) = sum conj(b_k) z^{-k} where
/// f^{-1}(w) = sum b_k w^k, known through z^{-order}.
template <class S>
Loop<S> tau_transform(const Loop<S>& loop, int order);

/// Q_k[tau(gamma)] = conj(P_k[gamma]) for k <= K, one record per k. Exact
/// equality for exact loops, 1e-10 otherwise.
template <class S>
std::vector<CheckRecord> pq_tau_check(const Loop<S>& loop, int K);

/// |v_k| <= (k+1) (4/Lambda)^k for 1 <= k <= K, where
/// f^{-1}(w) = w/Lambda (1 + sum v_k w^k). Exact comparison.
std::vector<CheckRecord> bieberbach_check(const Loop<GaussianRational>& loop, int K);

Loop<Complex> to_float(const Loop<GaussianRational>& loop);

/// Interior data u_1..u_N of phi_{k,t}(gamma) (or psi), renormalized. k >= -1.
Loop<Complex> flow_image(const Loop<Complex>& loop, int k, double t, FlowKind kind, int N);

/// (1/2) d/dt [F(phi_{k,t} gamma) - i F(psi_{k,t} gamma)] at t = 0 for the
/// coordinate F = Lambda or u_n, by central differences at t = 1e-4 and
/// 1e-5 combined with Richardson extrapolation.
Complex finite_difference_generator(const Loop<Complex>& loop, int k, Var target);

}  // namespace loopvir
