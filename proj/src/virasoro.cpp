#include "loopvir/virasoro.hpp"

#include <algorithm>

namespace loopvir {

namespace {

CoeffPoly central_term(int n, int k, const CoeffPoly& c) {
  if (n != -k) return CoeffPoly(GaussianRational(), c.cutoff());
  return c * GaussianRational(Rational(n * n * n - n, 12));
}

CheckRecord finish(CheckRecord r, const CoeffPoly& residual) {
  r.residual = residual.to_string();
  r.pass = residual.is_zero();
  return r;
}

int table_size(int n, int k) { return std::max({0, -n, -k, -(n + k)}); }

}  // namespace

CoeffPoly phi(int k, const NeretinTable& table, bool corrupt) {
  if (k > 0) return CoeffPoly(GaussianRational(), table.N);
  if (-k > table.K) {
    throw TruncationError("phi: Phi_" + std::to_string(k) + " needs a Neretin table with K >= " + std::to_string(-k) +
                          " (have " + std::to_string(table.K) + ")");
  }
  return CoeffPoly::central(table.N) * table[-k] * GaussianRational(Rational(1, corrupt ? 11 : 12));
}

VirasoroContext::VirasoroContext(int cutoff, int table_K, bool corrupt)
    : action_(std::max(cutoff, table_K)), table_(neretin_table(table_K, std::max(cutoff, table_K))), corrupt_(corrupt) {}

int lkp_cutoff(int /*k*/, int m) { return std::max(m, 1); }
int negative_pair_cutoff(int k, int n) { return k + n; }
int cocycle_cutoff(int n, int k) {
  return std::max({std::max(-k, 0) + std::max(-n, 0), witt_min_cutoff(n, 1), witt_min_cutoff(k, 1), table_size(n, k)});
}
int cocycle_table_size(int n, int k) { return table_size(n, k); }
int virasoro_cutoff(int n, int k, int max_index) {
  return std::max(witt_commutator_cutoff(n, k, max_index), table_size(n, k));
}

CheckRecord lkp_identity_check(int k, int m, const VirasoroContext& ctx) {
  if (k < 0 || m < 0) throw DomainError("lkp_identity_check: needs k, m >= 0");
  CheckRecord r;
  r.identity = k > m ? "L_k P_m = 0 (k > m)" : "L_k P_m = (k+m) P_{m-k} + (k^3-k) delta_{k,m}";
  r.indices = {{"k", k}, {"m", m}};
  const NeretinTable& t = ctx.table();
  CoeffPoly rhs(GaussianRational(), ctx.cutoff());
  if (m >= k) {
    rhs = t[m - k] * GaussianRational(k + m);
    if (k == m) rhs += CoeffPoly(GaussianRational(k * k * k - k), ctx.cutoff());
  }
  return finish(r, ctx.action().apply(k, t[m]) - rhs);
}

CheckRecord lkp_identity_check(int k, int m, const NeretinTable& table) {
  const int cutoff = std::max(lkp_cutoff(k, m), table.N);
  const VirasoroContext ctx(cutoff, std::max(table.K, m));
  return lkp_identity_check(k, m, ctx);
}

CheckRecord negative_pair_identity_check(int k, int n, const VirasoroContext& ctx) {
  if (k < 1 || n < 1) throw DomainError("negative_pair_identity_check: needs k, n >= 1");
  CheckRecord r;
  r.identity = "L_{-k} P_n - L_{-n} P_k = (n-k) P_{k+n}";
  r.indices = {{"k", k}, {"n", n}};
  const NeretinTable& t = ctx.table();
  const CoeffPoly lhs = ctx.action().apply(-k, t[n]) - ctx.action().apply(-n, t[k]);
  return finish(r, lhs - t[k + n] * GaussianRational(n - k));
}

CheckRecord negative_pair_identity_check(int k, int n, const NeretinTable& table) {
  const int cutoff = std::max(negative_pair_cutoff(k, n), table.N);
  const VirasoroContext ctx(cutoff, std::max(table.K, k + n));
  return negative_pair_identity_check(k, n, ctx);
}

CheckRecord cocycle_check(int n, int k, const VirasoroContext& ctx) {
  CheckRecord r;
  r.identity = "L_n Phi_k - L_k Phi_n = (n-k) Phi_{n+k} + (c/12)(n^3-n) delta_{n,-k}";
  r.indices = {{"n", n}, {"k", k}};
  const WittAction& a = ctx.action();
  const CoeffPoly lhs = a.apply(n, ctx.phi(k)) - a.apply(k, ctx.phi(n));
  const CoeffPoly rhs = ctx.phi(n + k) * GaussianRational(n - k) + central_term(n, k, ctx.c());
  return finish(r, lhs - rhs);
}

CheckRecord cocycle_check(int n, int k, bool corrupt) {
  const VirasoroContext ctx(cocycle_cutoff(n, k), cocycle_table_size(n, k), corrupt);
  return cocycle_check(n, k, ctx);
}

CheckRecord virasoro_commutator_check(int n, int k, const CoeffPoly& target, const VirasoroContext& ctx) {
  CheckRecord r;
  r.identity = "[V_n, V_k] = (n-k) V_{n+k} + (c/12)(n^3-n) delta_{n,-k}";
  r.indices = {{"n", n}, {"k", k}};
  r.target = target.to_string();
  const VirasoroOperator vn = ctx.op(n);
  const VirasoroOperator vk = ctx.op(k);
  const CoeffPoly f = target.with_cutoff(ctx.cutoff());
  const CoeffPoly lhs = vn.apply(vk.apply(f)) - vk.apply(vn.apply(f));
  const CoeffPoly rhs = ctx.op(n + k).apply(f) * GaussianRational(n - k) + central_term(n, k, ctx.c()) * f;
  return finish(r, lhs - rhs);
}

std::vector<CheckRecord> virasoro_commutator_check(int n, int k, std::span<const CoeffPoly> targets, bool corrupt) {
  int idx = 0;
  for (const CoeffPoly& t : targets) idx = std::max(idx, t.max_u_index());
  const VirasoroContext ctx(virasoro_cutoff(n, k, idx), table_size(n, k), corrupt);
  std::vector<CheckRecord> out;
  for (const CoeffPoly& t : targets) out.push_back(virasoro_commutator_check(n, k, t, ctx));
  return out;
}

}  // namespace loopvir
