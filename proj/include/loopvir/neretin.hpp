#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopvir/poly.hpp"
#include "loopvir/series.hpp"

namespace loopvir {

/// Lambda*z*(1 + u_1 z + ... + u_N z^N) over the ring with cutoff N, viewed to
/// the given order (default N+1). Coefficients past z^{N+1} are exactly zero.
TruncSeries<CoeffPoly> symbolic_f(int N, int order = -1);

/// P_0..P_K, the coefficients of z^2 S[f^{-1}](z) for the symbolic map f.
struct NeretinTable {
  int K = 0;
  int N = 0;
  std::vector<CoeffPoly> entries;

  const CoeffPoly& operator[](int k) const;
  /// Same table embedded in a larger coordinate ring.
  NeretinTable with_cutoff(int cutoff) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

/// Builds the table for K >= 0 over the ring with cutoff N (default K).
NeretinTable neretin_table(int K, int N = -1);

/// Coefficients of z^2 S[F](z) for a concrete map given as a series at 0
/// with valuation one (P_k when F = f^{-1}).
template <class R>
std::vector<R> schwarzian_coefficients(const TruncSeries<R>& map, int K) {
  if (map.valuation() != 1) throw DomainError("schwarzian_coefficients: map must have valuation 1");
  if (map.order() < K + 1) {
    throw TruncationError("schwarzian_coefficients: map known to order " + std::to_string(map.order()) +
                          ", need " + std::to_string(K + 1));
  }
  const TruncSeries<R> s = schwarzian(map).shift(2);
  std::vector<R> out;
  for (int k = 0; k <= K; ++k) out.push_back(s.coeff(k));
  return out;
}

/// Neretin values P_0..P_K of a concrete interior map f (valuation one).
template <class R>
std::vector<R> neretin_P_from_interior(const TruncSeries<R>& f, int K) {
  return schwarzian_coefficients(revert(f), K);
}

/// Q_0..Q_K from the expansion at infinity of g^{-1}: with x = 1/z,
/// z^2 S[g^{-1}](z) = x^2 S[G](x) where g^{-1}(z) = G(1/z).
template <class R>
std::vector<R> neretin_Q_from_exterior(const SeriesAtInfinity<R>& g_inverse, int K) {
  if (g_inverse.inner.valuation() != 1) {
    throw DomainError("neretin_Q_from_exterior: g^{-1} must behave like b_1/z at infinity");
  }
  return schwarzian_coefficients(g_inverse.inner, K);
}

/// The two formal combinations produced by pairing the vector fields v_n and
/// i*v_n with the Schwarzian on a small (interior) or large (exterior)
/// circle: the phi-flow and psi-flow derivatives are Re of these.
template <class R>
struct ContourPairing {
  R phi;
  R psi;
};

/// Interior pairing for n <= 0: residue of -z^{n+1} S[f^{-1}](z), divided by 3.
ContourPairing<CoeffPoly> pair_contour_interior(int n, const NeretinTable& table);

/// Exterior pairing for n >= 0 from Q_0..Q_K: the large-circle integral of
/// z^{n+1} S[g^{-1}](z), computed as a residue in w = 1/z, divided by 3.
template <class R>
ContourPairing<R> pair_contour_exterior(int n, std::span<const R> q) {
  using traits = ring_traits<R>;
  const int K = static_cast<int>(q.size()) - 1;
  if (n < 0 || n > K) {
    throw DomainError("pair_contour: exterior side needs 0 <= n <= K (n=" + std::to_string(n) +
                      ", K=" + std::to_string(K) + ")");
  }
  // S[g^{-1}] in w = 1/z is w^2 sum Q_k w^k; z^{n+1} dz becomes w^{-n-1} w^{-2} dw.
  const TruncSeries<R> s(2, std::vector<R>(q.begin(), q.end()), K + 2);
  const TruncSeries<R> field = TruncSeries<R>::monomial(traits::one(), -n - 3, K + 2);
  const R residue = (s * field).coeff(-1);
  const R third = traits::scale(residue, Rational(1, 3));
  return {third, third * scalar_from<R>(GaussianRational::i())};
}

}  // namespace loopvir
