// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "loopvir/cli.hpp"
#include "loopvir/loops.hpp"
#include "loopvir/neretin.hpp"
#include "loopvir/suites.hpp"
#include "loopvir/virasoro.hpp"
#include "loopvir/witt.hpp"
#include "oracles.hpp"

using namespace loopvir;

namespace {

using Q = GaussianRational;
using QSeries = TruncSeries<Q>;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail = what;
    pass = pass && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// First failing record of a report, or a count summary.
std::string summarize(const VerificationReport& rep) {
  std::ostringstream os;
  os << rep.total() - rep.failures() << "/" << rep.total() << " checks";
  for (const CheckRecord& r : rep.records) {
    if (!r.pass) {
      os << "; first failure " << r.identity << " " << r.indices.dump() << " residual " << r.residual;
      break;
    }
  }
  return os.str();
}

void suite_gate(Outcome& o, const VerificationReport& rep, double limit) {
  o.require(rep.total() > 0, "suite produced no checks");
  o.require(rep.pass(), summarize(rep));
  o.require(rep.seconds < limit, "took " + std::to_string(rep.seconds) + " s");
  if (o.pass) o.detail = summarize(rep) + ", " + std::to_string(rep.seconds).substr(0, 5) + " s";
}

Outcome witt_relations() {
  Outcome o;
  SuiteOptions opts;
  opts.range = 5;
  const VerificationReport rep = run_witt_suite(opts);
  o.require(rep.total() == 11 * 11 * 5, "expected 605 (n, m, target) checks");
  suite_gate(o, rep, 60);
  return o;
}

Outcome lkp_identity() {
  Outcome o;
  SuiteOptions opts;
  opts.range = 5;
  const VerificationReport rep = run_lkp_suite(opts);
  o.require(rep.total() == 9 * 9, "expected the full 0..8 grid");
  WittAction action(lkp_cutoff(2, 2));
  const CoeffPoly image = action.apply(2, neretin_table(2, action.cutoff())[2]);
  o.require(image == CoeffPoly(6), "L_2 P_2 = " + image.to_string());
  suite_gate(o, rep, 60);
  return o;
}

Outcome negative_pairs() {
  Outcome o;
  SuiteOptions opts;
  opts.range = 5;
  const VerificationReport rep = run_negpair_suite(opts);
  o.require(rep.total() == 25, "expected 25 pairs");
  suite_gate(o, rep, 120);
  return o;
}

Outcome cocycle() {
  Outcome o;
  SuiteOptions opts;
  opts.range = 5;
  const VerificationReport rep = run_cocycle_suite(opts);
  o.require(rep.total() == 121, "expected 121 pairs");
  // The diagonal must carry exactly (c/12)(n^3 - n): dropping it leaves that term.
  for (int n = 2; n <= 5; ++n) {
    VirasoroContext ctx(cocycle_cutoff(n, -n), cocycle_table_size(n, -n));
    const CoeffPoly lhs = ctx.action().apply(n, ctx.phi(-n)) - ctx.action().apply(-n, ctx.phi(n)) -
                          ctx.phi(0) * Q(2 * n);
    const CoeffPoly central = ctx.c() * Q(Rational(n * n * n - n, 12));
    o.require(lhs == central, "diagonal n=" + std::to_string(n) + " gives " + lhs.to_string());
  }
  suite_gate(o, rep, 120);
  return o;
}

Outcome operator_relation() {
  Outcome o;
  SuiteOptions opts;
  opts.range = 4;
  const VerificationReport rep = run_virasoro_suite(opts);
  o.require(rep.total() == 9 * 9 * 5, "expected 405 (n, k, target) checks");
  suite_gate(o, rep, 300);
  return o;
}

Outcome neretin_structure() {
  Outcome o;
  const NeretinTable t = neretin_table(10);
  o.require(t[0].is_zero() && t[1].is_zero(), "P_0 or P_1 nonzero");
  o.require(t[2].to_string() == "6*L^-2*(u1^2 - u2)", "P_2 = " + t[2].to_string());

  const int N = 3;
  const CoeffPoly L = CoeffPoly::lambda(N);
  const CoeffPoly zero(Q(), N);
  std::vector<CoeffPoly> f{zero, L};
  for (int n = 1; n <= N; ++n) f.push_back(L * CoeffPoly::u(n, N));
  const auto b = oracle::naive_reversion(f, 3, CoeffPoly::lambda(N, -1), zero);
  const CoeffPoly brute = oracle::schwarzian_at_zero(b[1], b[2], b[3], L);
  o.require(brute == t[2].with_cutoff(N), "brute-force P_2 = " + brute.to_string());

  for (int k = 2; k <= 10; ++k) {
    const auto g = t[k].grading();
    o.require(g.has_value() && g->lambda_degree == -k && g->u_weight == k, "P_" + std::to_string(k) + " grading");
  }
  if (o.pass) o.detail = "P_0 = P_1 = 0, P_2 matches brute force, P_2..P_10 graded";
  return o;
}

Outcome tau_identities() {
  Outcome o;
  std::size_t flows = 0;
  for (int k = -5; k <= 5; ++k) {
    if (k == 0) continue;
    for (const CheckRecord& r : tau_flow_identity_records(k, 12)) {
      ++flows;
      o.require(r.pass, "flow " + r.identity + " " + r.indices.dump());
    }
  }
  std::vector<Loop<Q>> loops;
  for (const std::string& s : builtin_loop_specs()) loops.push_back(parse_loop<Q>(s));
  for (auto& l : random_exact_loops(10, 20240601u)) loops.push_back(std::move(l));
  o.require(loops.size() == builtin_loop_specs().size() + 10, "random loop generation");
  std::size_t pq = 0;
  for (const auto& loop : loops) {
    for (const CheckRecord& r : pq_tau_check(loop, 6)) {
      ++pq;
      o.require(r.pass, "pq on " + loop.describe() + " " + r.indices.dump());
    }
  }
  if (o.pass) o.detail = std::to_string(flows) + " flow identities, " + std::to_string(pq) + " Q/P checks";
  return o;
}

QSeries random_map(std::mt19937& rng, int order) {
  std::vector<Q> c;
  Q lead;
  while (lead.is_zero()) lead = oracle::random_gaussian(rng, 5, 4);
  c.push_back(lead);
  for (int m = 2; m <= order; ++m) c.push_back(oracle::random_gaussian(rng, 3, 5));
  return QSeries(1, std::move(c), order);
}

Outcome series_kernel() {
  Outcome o;
  std::mt19937 rng(8);
  const int order = 24;
  for (int trial = 0; trial < 50; ++trial) {
    const QSeries f = random_map(rng, order);
    const QSeries g = revert(f);
    o.require(g.order() == order, "reversion lost order");
    o.require(compose(f, g).agrees_with(QSeries::identity(order)), "f(g) != z");
    o.require(compose(g, f).agrees_with(QSeries::identity(order)), "g(f) != z");
    if (trial < 5) {
      std::vector<Q> dense;
      for (int m = 0; m <= 12; ++m) dense.push_back(f.coeff(m));
      const auto naive = oracle::naive_reversion(dense, 12, f.leading().inverse(), Q());
      for (int m = 1; m <= 12; ++m) o.require(naive[static_cast<std::size_t>(m)] == g.coeff(m), "naive reversion disagrees");
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    o.require(schwarzian_chain_check(random_map(rng, 10), random_map(rng, 10)), "chain rule");
  }
  for (int trial = 0; trial < 5; ++trial) {
    // (a z) / (1 + b z) and (a z + b) / (c z + d)
    const Q a = oracle::random_gaussian(rng, 5, 3) + Q(7);
    const Q bb = oracle::random_gaussian(rng, 5, 3);
    const QSeries m1 = QSeries::monomial(a, 1, 16) * QSeries::from_polynomial({Q(1), bb}, 16).inverse();
    o.require(schwarzian(m1).is_zero(), "Mobius Schwarzian");
    const QSeries m2 = QSeries::from_polynomial({bb, a}, 16) / QSeries::from_polynomial({a, bb}, 16);
    o.require(schwarzian(m2).is_zero(), "Mobius Schwarzian");
  }
  if (o.pass) o.detail = "50 reversions at order 24, 20 chain rules, Mobius maps";
  return o;
}

Outcome numeric_oracle() {
  Outcome o;
  double worst = 0;
  std::size_t count = 0;
  for (const std::string& spec : float_panel_specs()) {
    const Loop<Complex> loop = parse_loop<Complex>(spec);
    for (int k = -1; k <= 4; ++k) {
      for (Var v : {Var::lambda(), Var::u(1), Var::u(2), Var::u(3)}) {
        const CheckRecord r = fd_oracle_check(loop, k, v);
        ++count;
        if (r.error) worst = std::max(worst, *r.error);
        o.require(r.pass, spec + " k=" + std::to_string(k) + " " + v.name() + " residual " + r.residual);
      }
    }
  }
  o.require(count == 72, "panel size");
  if (o.pass) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%zu estimates, worst relative error %.2e", count, worst);
    o.detail = buf;
  }
  return o;
}

Outcome scaling_and_bieberbach() {
  Outcome o;
  const NeretinTable t = neretin_table(6);
  std::size_t count = 0;
  for (const std::string& spec : builtin_loop_specs()) {
    const Loop<Q> loop = parse_loop<Q>(spec);
    const auto base = eval_P(loop, t);
    for (const Q lam : {Q(2), Q(3), Q(Rational(1, 5))}) {
      const auto scaled = eval_P(scale(loop, lam), t);
      for (int k = 0; k <= 6; ++k) {
        ++count;
        o.require(scaled[static_cast<std::size_t>(k)] == base[static_cast<std::size_t>(k)] * lam.pow(-k),
                  "scaling on " + spec + " k=" + std::to_string(k));
      }
    }
    if (loop.kind == LoopKind::interior_series) continue;
    for (const CheckRecord& r : bieberbach_check(loop, 12)) {
      ++count;
      o.require(r.pass, "Bieberbach on " + spec + " " + r.indices.dump());
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " exact checks";
  return o;
}

Outcome negative_control() {
  Outcome o;
  SuiteOptions opts;
  opts.range = 5;
  opts.corrupt_phi = true;
  const VerificationReport rep = run_cocycle_suite(opts);
  o.require(!rep.pass(), "corrupted cocycle still passes");
  bool nonzero = false;
  for (const CheckRecord& r : rep.records) nonzero = nonzero || (!r.pass && r.residual != "0");
  o.require(nonzero, "no nonzero residual recorded");
  std::ostringstream out, err;
  const int code = run_cli({"verify", "cocycle", "--range", "5", "--corrupt-phi"}, out, err);
  o.require(code == kExitFail, "exit code " + std::to_string(code));
  if (o.pass) o.detail = std::to_string(rep.failures()) + " failing checks, exit code 1";
  return o;
}

Outcome end_to_end() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream out, err;
  const int code = run_cli({"verify", "all", "--range", "5"}, out, err);
  const double s = seconds_since(t0);
  o.require(code == kExitPass, "exit code " + std::to_string(code) + ": " + err.str());
  o.require(s < 300, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "exit 0 in " + std::to_string(s).substr(0, 5) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Witt relations on |n|,|m| <= 5", witt_relations},
      {"L_k P_m identity for 0 <= k, m <= 8", lkp_identity},
      {"negative pair identity for 1 <= k, n <= 5", negative_pairs},
      {"cocycle condition with symbolic c, |n|,|k| <= 5", cocycle},
      {"operator commutation relations, |n|,|k| <= 4", operator_relation},
      {"Neretin polynomial structure", neretin_structure},
      {"tau identities", tau_identities},
      {"series kernel", series_kernel},
      {"finite-difference oracle", numeric_oracle},
      {"scaling covariance and Bieberbach bound", scaling_and_bieberbach},
      {"corrupted cocycle is caught", negative_control},
      {"verify all --range 5", end_to_end},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << i + 1 << "  " << criteria[i].first
              << "  (" << o.detail << ")" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
