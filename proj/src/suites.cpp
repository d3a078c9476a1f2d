#include "loopvir/suites.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "loopvir/virasoro.hpp"
#include "loopvir/witt.hpp"

namespace loopvir {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

int resolve_cutoff(const SuiteOptions& opts, int required, const std::string& suite) {
  if (!opts.order) return required;
  if (*opts.order < required) {
    throw TruncationError(suite + " at range " + std::to_string(opts.range) + " needs a cutoff of at least " +
                          std::to_string(required) + " (got --order " + std::to_string(*opts.order) + ")");
  }
  return *opts.order;
}

/// Evaluates one record per job in parallel, keeping grid order.
template <class Job, class Fn>
std::vector<CheckRecord> run_grid(const std::vector<Job>& jobs, int threads, Fn fn) {
  std::vector<CheckRecord> out(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) { out[i] = fn(jobs[i]); });
  return out;
}

std::vector<CoeffPoly> default_witt_targets() {
  std::vector<CoeffPoly> t{CoeffPoly::lambda(CoeffPoly::kUnbound)};
  for (int n = 1; n <= 4; ++n) t.push_back(CoeffPoly::u(n, 4));
  return t;
}

nlohmann::json target_names(const std::vector<CoeffPoly>& targets) {
  nlohmann::json j = nlohmann::json::array();
  for (const CoeffPoly& t : targets) j.push_back(t.to_string());
  return j;
}

struct PairJob {
  int a;
  int b;
  std::size_t target;
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"witt", "cocycle", "virasoro", "lkp", "negpair", "tau", "loops", "all"};
  return names;
}

VerificationReport run_witt_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  const int R = opts.range;
  const std::vector<CoeffPoly> targets = opts.targets.empty() ? default_witt_targets() : opts.targets;
  int idx = 0;
  for (const CoeffPoly& t : targets) idx = std::max(idx, t.max_u_index());
  int required = 1;
  std::vector<PairJob> jobs;
  for (int n = -R; n <= R; ++n) {
    for (int m = -R; m <= R; ++m) {
      required = std::max(required, witt_commutator_cutoff(n, m, idx));
      for (std::size_t t = 0; t < targets.size(); ++t) jobs.push_back({n, m, t});
    }
  }
  const int cutoff = resolve_cutoff(opts, required, "witt");
  const WittAction action(cutoff);
  VerificationReport rep;
  rep.suite = "witt";
  rep.record_key = "pairs";
  rep.parameters = {{"range", R}, {"cutoff", cutoff}, {"targets", target_names(targets)}};
  rep.records = run_grid(jobs, opts.threads, [&](const PairJob& j) {
    return witt_commutator_check(j.a, j.b, targets[j.target], action);
  });
  rep.seconds = since(start);
  return rep;
}

VerificationReport run_lkp_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  const int M = opts.range + 3;
  const int cutoff = resolve_cutoff(opts, lkp_cutoff(M, M), "lkp");
  const VirasoroContext ctx(cutoff, M);
  std::vector<PairJob> jobs;
  for (int k = 0; k <= M; ++k) {
    for (int m = 0; m <= M; ++m) jobs.push_back({k, m, 0});
  }
  VerificationReport rep;
  rep.suite = "lkp";
  rep.parameters = {{"range", opts.range}, {"max_index", M}, {"cutoff", cutoff}};
  rep.records = run_grid(jobs, opts.threads, [&](const PairJob& j) { return lkp_identity_check(j.a, j.b, ctx); });
  rep.seconds = since(start);
  return rep;
}

VerificationReport run_negpair_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  const int R = opts.range;
  const int cutoff = resolve_cutoff(opts, negative_pair_cutoff(R, R), "negpair");
  const VirasoroContext ctx(cutoff, 2 * R);
  std::vector<PairJob> jobs;
  for (int k = 1; k <= R; ++k) {
    for (int n = 1; n <= R; ++n) jobs.push_back({k, n, 0});
  }
  VerificationReport rep;
  rep.suite = "negpair";
  rep.parameters = {{"range", R}, {"cutoff", cutoff}};
  rep.records = run_grid(jobs, opts.threads, [&](const PairJob& j) { return negative_pair_identity_check(j.a, j.b, ctx); });
  rep.seconds = since(start);
  return rep;
}

VerificationReport run_cocycle_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  const int R = opts.range;
  int required = 1;
  int table = 0;
  std::vector<PairJob> jobs;
  for (int n = -R; n <= R; ++n) {
    for (int k = -R; k <= R; ++k) {
      required = std::max(required, cocycle_cutoff(n, k));
      table = std::max(table, cocycle_table_size(n, k));
      jobs.push_back({n, k, 0});
    }
  }
  const int cutoff = resolve_cutoff(opts, required, "cocycle");
  const VirasoroContext ctx(cutoff, table, opts.corrupt_phi);
  VerificationReport rep;
  rep.suite = "cocycle";
  rep.parameters = {{"range", R}, {"cutoff", cutoff}, {"table", table}, {"corrupt_phi", opts.corrupt_phi}};
  rep.records = run_grid(jobs, opts.threads, [&](const PairJob& j) {
    CheckRecord r = cocycle_check(j.a, j.b, ctx);
    if (j.a == -j.b && j.a != 0) {
      r.note = "central term " + (ctx.c() * GaussianRational(Rational(j.a * j.a * j.a - j.a, 12))).to_string();
    }
    return r;
  });
  rep.seconds = since(start);
  return rep;
}

VerificationReport run_virasoro_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  const int R = opts.range;
  const std::vector<CoeffPoly> targets{CoeffPoly(1), CoeffPoly::lambda(CoeffPoly::kUnbound), CoeffPoly::u(1, 2),
                                       CoeffPoly::u(2, 2), CoeffPoly::u(1, 2) * CoeffPoly::u(2, 2)};
  int required = 1;
  int table = 0;
  std::vector<PairJob> jobs;
  for (int n = -R; n <= R; ++n) {
    for (int k = -R; k <= R; ++k) {
      required = std::max(required, virasoro_cutoff(n, k, 2));
      table = std::max(table, cocycle_table_size(n, k));
      for (std::size_t t = 0; t < targets.size(); ++t) jobs.push_back({n, k, t});
    }
  }
  const int cutoff = resolve_cutoff(opts, required, "virasoro");
  const VirasoroContext ctx(cutoff, table, opts.corrupt_phi);
  VerificationReport rep;
  rep.suite = "virasoro";
  rep.parameters = {{"range", R},
                    {"cutoff", cutoff},
                    {"table", table},
                    {"targets", target_names(targets)},
                    {"corrupt_phi", opts.corrupt_phi}};
  rep.records = run_grid(jobs, opts.threads, [&](const PairJob& j) {
    return virasoro_commutator_check(j.a, j.b, targets[j.target], ctx);
  });
  rep.seconds = since(start);
  return rep;
}

const std::vector<std::string>& builtin_loop_specs() {
  static const std::vector<std::string> specs{
      "circle:0,2",        "circle:1/3,1",          "circle:1/2+1/4*i,2", "pdisk:1/4,2",
      "pdisk:1/8+1/8*i,2", "pdisk:1/8*i,2",         "pdisk:1/5,3",        "pdisk:-1/10+1/20*i,4",
      "iseries:3/2;1/10+1/10*i,-1/10,1/20*i"};
  return specs;
}

const std::vector<std::string>& float_panel_specs() {
  static const std::vector<std::string> specs{"pdisk:1/4,2", "iseries:1.5;0.1+0.1i,-0.1,0.05i",
                                              "iseries:0.8;-0.2,0.05-0.05i,0.05"};
  return specs;
}

std::vector<Loop<GaussianRational>> random_exact_loops(int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick_m(2, 4);
  std::uniform_int_distribution<int> pick_q(4, 24);
  std::vector<Loop<GaussianRational>> out;
  while (static_cast<int>(out.size()) < count) {
    const int m = pick_m(rng);
    const int q = pick_q(rng);
    std::uniform_int_distribution<int> pick_num(-q / m, q / m);
    const GaussianRational eps(Rational(pick_num(rng), q), Rational(pick_num(rng), q));
    if (eps.is_zero() || eps.is_real()) continue;
    if (!(eps.norm() * Rational(m * m) < Rational(1))) continue;
    out.push_back(make_perturbed_disk(eps, m));
  }
  return out;
}

VerificationReport run_tau_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  const int R = opts.range;
  const int order = opts.order.value_or(12);
  const int K = R + 1;
  VerificationReport rep;
  rep.suite = "tau";
  rep.parameters = {{"range", R}, {"order", order}, {"pq_K", K}, {"random_loops", 10}};
  std::vector<int> ks;
  for (int k = -R; k <= R; ++k) ks.push_back(k);
  std::vector<std::vector<CheckRecord>> flow(ks.size());
  parallel_for(ks.size(), opts.threads, [&](std::size_t i) { flow[i] = tau_flow_identity_records(ks[i], order); });
  for (auto& v : flow) rep.records.insert(rep.records.end(), v.begin(), v.end());

  std::vector<Loop<GaussianRational>> loops;
  for (const std::string& s : builtin_loop_specs()) loops.push_back(parse_loop<GaussianRational>(s));
  for (auto& l : random_exact_loops(10, 20240601u)) loops.push_back(std::move(l));
  std::vector<std::vector<CheckRecord>> pq(loops.size());
  parallel_for(loops.size(), opts.threads, [&](std::size_t i) { pq[i] = pq_tau_check(loops[i], K); });
  for (auto& v : pq) rep.records.insert(rep.records.end(), v.begin(), v.end());
  rep.seconds = since(start);
  return rep;
}

CheckRecord fd_oracle_check(const Loop<Complex>& loop, int k, Var target) {
  CheckRecord r;
  r.identity = "finite-difference L_k = symbolic L_k";
  r.indices = {{"k", k}};
  r.target = target.name() + " at " + loop.describe();
  const int N = std::max(target.u_index(), 1) + std::max(-k, 0);
  const WittDerivation g = witt_generator(k, N);
  const CoeffPoly& image = target.is_lambda() ? g.image_lambda() : g.image_u(target.u_index());
  const Complex symbolic = image.eval(coordinate_assignment(loop, N));
  const Complex estimate = finite_difference_generator(loop, k, target);
  const double err = std::abs(estimate - symbolic) / std::max(1.0, std::abs(symbolic));
  r.error = err;
  r.pass = err <= 1e-6;
  r.residual = format_complex(estimate - symbolic);
  return r;
}

VerificationReport run_loops_suite(const SuiteOptions& opts) {
  const auto start = Clock::now();
  const int K = opts.range + 1;
  const int bieberbach_K = 12;
  VerificationReport rep;
  rep.suite = "loops";
  rep.parameters = {{"scaling_K", K}, {"bieberbach_K", bieberbach_K}, {"fd_k", {-1, 4}}};

  std::vector<Loop<GaussianRational>> loops;
  for (const std::string& s : builtin_loop_specs()) loops.push_back(parse_loop<GaussianRational>(s));
  const NeretinTable table = neretin_table(K);
  const std::vector<Rational> factors{Rational(2), Rational(3), Rational(1, 5)};
  std::vector<std::vector<CheckRecord>> per_loop(loops.size());
  parallel_for(loops.size(), opts.threads, [&](std::size_t i) {
    const Loop<GaussianRational>& loop = loops[i];
    const std::vector<GaussianRational> base = eval_P(loop, table);
    for (const Rational& lam : factors) {
      const std::vector<GaussianRational> scaled = eval_P(scale(loop, GaussianRational(lam)), table);
      for (int k = 0; k <= K; ++k) {
        CheckRecord r;
        r.identity = "P_k[lambda gamma] = lambda^{-k} P_k[gamma]";
        r.indices = {{"k", k}, {"lambda", lam.to_string()}};
        r.target = loop.describe();
        const GaussianRational diff =
            scaled[static_cast<std::size_t>(k)] - base[static_cast<std::size_t>(k)] * GaussianRational(lam.pow(-k));
        r.residual = diff.to_string();
        r.pass = diff.is_zero();
        per_loop[i].push_back(std::move(r));
      }
    }
    if (loop.kind != LoopKind::interior_series) {
      for (CheckRecord& r : bieberbach_check(loop, bieberbach_K)) per_loop[i].push_back(std::move(r));
    }
  });
  for (auto& v : per_loop) rep.records.insert(rep.records.end(), v.begin(), v.end());

  struct FdJob {
    std::size_t loop;
    int k;
    Var target;
  };
  std::vector<Loop<Complex>> panel;
  for (const std::string& s : float_panel_specs()) panel.push_back(parse_loop<Complex>(s));
  std::vector<FdJob> jobs;
  for (std::size_t l = 0; l < panel.size(); ++l) {
    for (int k = -1; k <= 4; ++k) {
      for (Var v : {Var::lambda(), Var::u(1), Var::u(2), Var::u(3)}) jobs.push_back({l, k, v});
    }
  }
  const auto fd = run_grid(jobs, opts.threads, [&](const FdJob& j) { return fd_oracle_check(panel[j.loop], j.k, j.target); });
  rep.records.insert(rep.records.end(), fd.begin(), fd.end());
  rep.seconds = since(start);
  return rep;
}

VerificationReport run_all_suites(const SuiteOptions& opts) {
  const auto start = Clock::now();
  SuiteOptions sub = opts;
  sub.order.reset();
  VerificationReport rep;
  rep.suite = "all";
  rep.parameters = {{"range", opts.range}, {"corrupt_phi", opts.corrupt_phi}};
  for (const std::string& name : suite_names()) {
    if (name == "all") continue;
    rep.parts.push_back(run_suite(name, sub));
  }
  rep.seconds = since(start);
  return rep;
}

VerificationReport run_suite(std::string_view name, const SuiteOptions& opts) {
  if (opts.range < 1) throw DomainError("range must be >= 1");
  if (name == "witt") return run_witt_suite(opts);
  if (name == "lkp") return run_lkp_suite(opts);
  if (name == "negpair") return run_negpair_suite(opts);
  if (name == "cocycle") return run_cocycle_suite(opts);
  if (name == "virasoro") return run_virasoro_suite(opts);
  if (name == "tau") return run_tau_suite(opts);
  if (name == "loops") return run_loops_suite(opts);
  if (name == "all") return run_all_suites(opts);
  throw ParseError("unknown suite '" + std::string(name) + "'");
}

}  // namespace loopvir
