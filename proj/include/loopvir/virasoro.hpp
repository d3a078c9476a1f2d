#pragma once

#include <span>
#include <vector>

#include "loopvir/neretin.hpp"
#include "loopvir/report.hpp"
#include "loopvir/witt.hpp"

namespace loopvir {

/// Phi_k = 0 for k > 0 and (c/12) P_{-k} for k <= 0, in the ring of the
/// table. With corrupt set the multiplier uses c/11 instead; the cocycle
/// checks must then fail (used to show the suite has teeth).
CoeffPoly phi(int k, const NeretinTable& table, bool corrupt = false);

/// The operator L_k + Phi_k over a shared Witt action and Neretin table.
struct VirasoroOperator {
  int k;
  const WittAction* action;
  CoeffPoly multiplier;

  CoeffPoly apply(const CoeffPoly& p) const { return action->apply(k, p) + multiplier * p.with_cutoff(action->cutoff()); }
};

/// Shared state for a batch of Virasoro checks: a Witt action and a Neretin
/// table over the same ring.
class VirasoroContext {
 public:
  VirasoroContext(int cutoff, int table_K, bool corrupt = false);

  int cutoff() const { return action_.cutoff(); }
  const WittAction& action() const { return action_; }
  const NeretinTable& table() const { return table_; }
  bool corrupt() const { return corrupt_; }

  CoeffPoly phi(int k) const { return loopvir::phi(k, table_, corrupt_); }
  VirasoroOperator op(int k) const { return {k, &action_, phi(k)}; }
  CoeffPoly c() const { return CoeffPoly::central(cutoff()); }

 private:
  WittAction action_;
  NeretinTable table_;
  bool corrupt_;
};

/// L_k P_m minus (k+m) P_{m-k} + (k^3-k) delta_{k,m} (m >= k >= 0), or minus 0 (k > m >= 0).
CheckRecord lkp_identity_check(int k, int m, const VirasoroContext& ctx);
CheckRecord lkp_identity_check(int k, int m, const NeretinTable& table);

/// L_{-k} P_n - L_{-n} P_k - (n-k) P_{k+n}, for k, n >= 1.
CheckRecord negative_pair_identity_check(int k, int n, const VirasoroContext& ctx);
CheckRecord negative_pair_identity_check(int k, int n, const NeretinTable& table);

/// L_n Phi_k - L_k Phi_n - (n-k) Phi_{n+k} - (c/12)(n^3-n) delta_{n,-k}.
CheckRecord cocycle_check(int n, int k, const VirasoroContext& ctx);
CheckRecord cocycle_check(int n, int k, bool corrupt = false);

/// [L_n + Phi_n, L_k + Phi_k] F - (n-k)(L_{n+k} + Phi_{n+k}) F - (c/12)(n^3-n) delta_{n,-k} F.
CheckRecord virasoro_commutator_check(int n, int k, const CoeffPoly& target, const VirasoroContext& ctx);
std::vector<CheckRecord> virasoro_commutator_check(int n, int k, std::span<const CoeffPoly> targets, bool corrupt = false);

/// Ring cutoff and table size that make each check exact.
int lkp_cutoff(int k, int m);
int negative_pair_cutoff(int k, int n);
int cocycle_cutoff(int n, int k);
int cocycle_table_size(int n, int k);
int virasoro_cutoff(int n, int k, int max_index);

}  // namespace loopvir
