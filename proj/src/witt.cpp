#include "loopvir/witt.hpp"

#include <cmath>

#include "loopvir/neretin.hpp"

namespace loopvir {

const CoeffPoly& WittDerivation::image_u(int n) const {
  if (n < 1 || n > n_valid) {
    throw TruncationError("L_" + std::to_string(k) + " image of u" + std::to_string(n) + " is not exact at cutoff " +
                          std::to_string(cutoff) + " (exact through u" + std::to_string(n_valid) + ")");
  }
  return images.u_images[static_cast<std::size_t>(n - 1)];
}

WittDerivation witt_generator(int k, int N) {
  const int n_valid = N - std::max(-k, 0);
  if (n_valid < 1) {
    throw TruncationError("witt_generator: L_" + std::to_string(k) + " needs N >= " + std::to_string(witt_min_cutoff(k, 1)) +
                          " (got " + std::to_string(N) + ")");
  }
  // h = -f^{k+1} / (z f'), needed through z^{n_valid}. f is exact past z^{N+1}
  // (its tail is zero), so the working order can be raised freely.
  TruncSeries<CoeffPoly> zfp;
  TruncSeries<CoeffPoly> h;
  for (int order = N + 1; order <= N + 1 + 2 * (std::abs(k) + 2); order += 2) {
    const TruncSeries<CoeffPoly> f = symbolic_f(N, order);
    zfp = f.derivative().shift(1);
    h = -(pow_int(f, k + 1) * zfp.inverse());
    if (h.order() >= n_valid && zfp.order() >= n_valid + 1) break;
  }
  if (h.order() < n_valid) throw TruncationError("witt_generator: could not reach order " + std::to_string(n_valid));
  // pi(h) = h_0/2 + sum_{m>=1} h_m z^m
  std::vector<CoeffPoly> projected;
  projected.push_back(h.coeff(0) * GaussianRational(Rational(1, 2)));
  for (int m = 1; m <= n_valid; ++m) projected.push_back(h.coeff(m));
  const TruncSeries<CoeffPoly> df = zfp * TruncSeries<CoeffPoly>(0, std::move(projected), n_valid);

  const CoeffPoly inv_lambda = CoeffPoly::lambda(N, -1);
  WittDerivation d;
  d.k = k;
  d.cutoff = N;
  d.n_valid = n_valid;
  d.images.lambda_image = df.coeff(1).with_cutoff(N);
  for (int n = 1; n <= n_valid; ++n) {
    const CoeffPoly img = (df.coeff(n + 1) - d.images.lambda_image * CoeffPoly::u(n, N)) * inv_lambda;
    d.images.u_images.push_back(img.with_cutoff(N));
  }
  return d;
}

const WittDerivation& WittAction::generator(int k) const {
  Slot* slot = nullptr;
  {
    std::lock_guard lock(mu_);
    auto& entry = slots_[k];
    if (!entry) entry = std::make_unique<Slot>();
    slot = entry.get();
  }
  std::call_once(slot->once, [&] { slot->value = std::make_unique<WittDerivation>(witt_generator(k, cutoff_)); });
  return *slot->value;
}

CoeffPoly WittAction::apply(int k, const CoeffPoly& p) const {
  if (p.cutoff() > cutoff_) {
    throw TruncationError("operand lives in a ring with cutoff " + std::to_string(p.cutoff()) +
                          ", action built at " + std::to_string(cutoff_));
  }
  if (!p.contains(Var::lambda()) && p.max_u_index() == 0) return CoeffPoly(GaussianRational(), cutoff_);
  const CoeffPoly q = p.with_cutoff(cutoff_);
  const WittDerivation& g = generator(k);
  if (q.max_u_index() > g.n_valid) {
    throw TruncationError("L_" + std::to_string(k) + " applied to a polynomial in u" + std::to_string(q.max_u_index()) +
                          " needs cutoff >= " + std::to_string(witt_min_cutoff(k, q.max_u_index())) + " (have " +
                          std::to_string(cutoff_) + ")");
  }
  return g.apply(q);
}

int witt_commutator_cutoff(int n, int m, int max_index) {
  const int a = std::max(-n, 0);
  const int b = std::max(-m, 0);
  return std::max({max_index + a + b, witt_min_cutoff(n, 1), witt_min_cutoff(m, 1), witt_min_cutoff(n + m, 1)});
}

CheckRecord witt_commutator_check(int n, int m, const CoeffPoly& target, const WittAction& action) {
  CheckRecord r;
  r.identity = "[L_n, L_m] = (n-m) L_{n+m}";
  r.indices = {{"n", n}, {"m", m}};
  r.target = target.to_string();
  const CoeffPoly lhs = action.apply(n, action.apply(m, target)) - action.apply(m, action.apply(n, target));
  const CoeffPoly residual = lhs - action.apply(n + m, target) * GaussianRational(n - m);
  r.residual = residual.to_string();
  r.pass = residual.is_zero();
  return r;
}

std::vector<CheckRecord> witt_commutator_check(int n, int m, std::span<const CoeffPoly> targets) {
  int idx = 0;
  for (const CoeffPoly& t : targets) idx = std::max(idx, t.max_u_index());
  const WittAction action(witt_commutator_cutoff(n, m, idx));
  std::vector<CheckRecord> out;
  for (const CoeffPoly& t : targets) out.push_back(witt_commutator_check(n, m, t, action));
  return out;
}

namespace {

/// order+1 distinct rationals of mixed sign.
std::vector<Rational> sample_times(int count) {
  std::vector<Rational> ts;
  for (int i = 1; ts.size() < static_cast<std::size_t>(count); ++i) {
    ts.emplace_back(i % 2 == 0 ? -i : i, i + 2);
  }
  return ts;
}

CheckRecord tau_record(int k, FlowKind kind, int order) {
  CheckRecord r;
  r.identity = kind == FlowKind::phi ? "tau phi_{k,t} tau = phi_{-k,-t}" : "tau psi_{k,t} tau = psi_{-k,t}";
  r.indices = {{"k", k}, {"order", order}};
  r.pass = true;
  for (const Rational& tq : sample_times(order + 1)) {
    const GaussianRational t(tq);
    const GaussianRational t_rhs = kind == FlowKind::phi ? -t : t;
    bool ok = false;
    if (k > 0) {
      const SeriesAtInfinity<GaussianRational> lhs = tau_conjugate(flow_series(k, t, kind, order + 2));
      const SeriesAtInfinity<GaussianRational> rhs = flow_series_at_infinity(-k, t_rhs, kind, order);
      ok = lhs.inner.agrees_with(rhs.inner, order);
      if (!ok) r.residual = "lhs " + lhs.to_string() + " vs rhs " + rhs.to_string();
    } else {
      const TruncSeries<GaussianRational> lhs = tau_conjugate(flow_series_at_infinity(k, t, kind, order + 2));
      const TruncSeries<GaussianRational> rhs = flow_series(-k, t_rhs, kind, order);
      ok = lhs.agrees_with(rhs, order);
      if (!ok) r.residual = "lhs " + lhs.to_string() + " vs rhs " + rhs.to_string();
    }
    if (!ok) {
      r.pass = false;
      r.note = "t = " + tq.to_string();
      break;
    }
  }
  return r;
}

/// k = 0: tau phi_{0,t} tau (z) = e^t z = phi_{0,-t}(z) and
/// tau psi_{0,t} tau (z) = e^{-it} z = psi_{0,t}(z), at sample points.
CheckRecord tau_record_zero(FlowKind kind) {
  CheckRecord r;
  r.identity = kind == FlowKind::phi ? "tau phi_{0,t} tau = phi_{0,-t}" : "tau psi_{0,t} tau = psi_{0,t}";
  r.indices = {{"k", 0}};
  double worst = 0.0;
  for (double t : {-0.7, 0.3, 1.1}) {
    for (Complex z : {Complex(0.4, 0.1), Complex(-1.3, 2.0), Complex(0.0, -0.5)}) {
      const Complex rate = kind == FlowKind::phi ? Complex(t, 0) : Complex(0, t);
      const Complex inner = std::exp(-rate) / std::conj(z);
      const Complex lhs = 1.0 / std::conj(inner);
      const Complex rhs = kind == FlowKind::phi ? std::exp(t) * z : std::exp(-rate) * z;
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  r.error = worst;
  r.pass = worst < 1e-12;
  r.residual = r.pass ? "0" : std::to_string(worst);
  return r;
}

}  // namespace

std::vector<CheckRecord> tau_flow_identity_records(int k, int order) {
  std::vector<CheckRecord> out;
  for (FlowKind kind : {FlowKind::phi, FlowKind::psi}) {
    out.push_back(k == 0 ? tau_record_zero(kind) : tau_record(k, kind, order));
  }
  return out;
}

bool tau_flow_identity_check(int k, int order) {
  for (const CheckRecord& r : tau_flow_identity_records(k, order)) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace loopvir
