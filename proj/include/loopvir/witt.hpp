#pragma once

#include <memory>
#include <mutex>
#include <map>
#include <span>
#include <type_traits>
#include <vector>

#include "loopvir/poly.hpp"
#include "loopvir/report.hpp"
#include "loopvir/series.hpp"

namespace loopvir {

/// Images of Lambda and u_1..u_{n_valid} under the complexified generator L_k.
struct WittDerivation {
  int k = 0;
  int cutoff = 0;
  int n_valid = 0;
  Derivation images;

  const CoeffPoly& image_lambda() const { return images.lambda_image; }
  /// Throws TruncationError for n > n_valid.
  const CoeffPoly& image_u(int n) const;
  CoeffPoly apply(const CoeffPoly& p) const { return derivation_apply(images, p); }
};

/// Smallest ring cutoff at which L_k has images up to u_{max_index}.
inline int witt_min_cutoff(int k, int max_index) { return std::max(max_index, 1) + std::max(-k, 0); }

/// L_k over the ring with cutoff N. The image of u_n involves u_{n-k}, so for
/// k < 0 only u_1..u_{N+k} are exact.
WittDerivation witt_generator(int k, int N);

/// Generators over one fixed ring, built on first use. Safe to share
/// between threads.
class WittAction {
 public:
  explicit WittAction(int cutoff) : cutoff_(cutoff) {}
  WittAction(const WittAction&) = delete;
  WittAction& operator=(const WittAction&) = delete;

  int cutoff() const { return cutoff_; }
  const WittDerivation& generator(int k) const;
  /// L_k p; throws TruncationError when p is outside the exact range.
  CoeffPoly apply(int k, const CoeffPoly& p) const;

 private:
  struct Slot {
    std::once_flag once;
    std::unique_ptr<WittDerivation> value;
  };
  int cutoff_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<Slot>> slots_;
};

/// Ring cutoff that makes the commutator [L_n, L_m] exact on targets in u_1..u_idx.
int witt_commutator_cutoff(int n, int m, int max_index);

/// [L_n, L_m] F - (n-m) L_{n+m} F for one target over an existing action.
CheckRecord witt_commutator_check(int n, int m, const CoeffPoly& target, const WittAction& action);
/// Same for several targets, on a ring sized for them.
std::vector<CheckRecord> witt_commutator_check(int n, int m, std::span<const CoeffPoly> targets);

enum class FlowKind { phi, psi };

/// phi_{k,t}(z) = z (1 + k t z^k)^{-1/k}; psi_{k,t} is the same with t -> i t.
/// For k >= 1 a series at 0, known through z^order. k = 0 gives e^{-t} z
/// (e^{-it} z), which only has a closed form over the complex numbers.
template <class R>
TruncSeries<R> flow_series(int k, const R& t, FlowKind kind, int order) {
  using traits = ring_traits<R>;
  const R s = kind == FlowKind::phi ? t : t * scalar_from<R>(GaussianRational::i());
  if (k < 0) throw DomainError("flow_series: k <= -1 is not a power series at 0; expand at infinity");
  if (k == 0) {
    if constexpr (std::is_same_v<R, Complex>) {
      return TruncSeries<R>::monomial(std::exp(-s), 1, order);
    } else {
      throw DomainError("flow_series: the k = 0 flow has the transcendental factor e^{-t}; use the scaling action");
    }
  }
  std::vector<R> base(static_cast<std::size_t>(k) + 1, traits::zero());
  base[0] = traits::one();
  base[static_cast<std::size_t>(k)] = traits::scale(s, Rational(k));
  return rational_power(TruncSeries<R>(0, std::move(base), order - 1), Rational(-1, k)).shift(1);
}

/// The flow for k <= -1 as a series in w = 1/z near infinity:
/// w^{-1} (1 + k t w^{|k|})^{-1/k}, inner known through w^order.
template <class R>
SeriesAtInfinity<R> flow_series_at_infinity(int k, const R& t, FlowKind kind, int order) {
  using traits = ring_traits<R>;
  if (k >= 0) throw DomainError("flow_series_at_infinity: needs k <= -1");
  const R s = kind == FlowKind::phi ? t : t * scalar_from<R>(GaussianRational::i());
  const int a = -k;
  std::vector<R> base(static_cast<std::size_t>(a) + 1, traits::zero());
  base[0] = traits::one();
  base[static_cast<std::size_t>(a)] = traits::scale(s, Rational(k));
  return {rational_power(TruncSeries<R>(0, std::move(base), order + 1), Rational(-1, k)).shift(-1)};
}

/// tau(z) = 1/conj(z). Conjugating a map near 0 gives a map near infinity
/// and vice versa: (tau F tau)(z) = 1/conj(F(1/conj(z))).
template <class R>
SeriesAtInfinity<R> tau_conjugate(const TruncSeries<R>& f) {
  return {f.conj().inverse()};
}
template <class R>
TruncSeries<R> tau_conjugate(const SeriesAtInfinity<R>& f) {
  return f.inner.conj().inverse();
}

/// Checks tau phi_{k,t} tau = phi_{-k,-t} and tau psi_{k,t} tau = psi_{-k,t}
/// as expansions through the given order. Each coefficient is a polynomial
/// in t of degree <= order, so order+1 distinct rational t decide it. k = 0
/// is checked in closed form.
std::vector<CheckRecord> tau_flow_identity_records(int k, int order);
bool tau_flow_identity_check(int k, int order);

}  // namespace loopvir
