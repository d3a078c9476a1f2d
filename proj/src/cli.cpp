#include "loopvir/cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "loopvir/loops.hpp"
#include "loopvir/neretin.hpp"
#include "loopvir/suites.hpp"
#include "loopvir/witt.hpp"

namespace loopvir {

namespace {

struct Settings {
  std::optional<int> order;
  int range = 5;
  std::string scalar = "exact";
  int threads = 0;
  bool json = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> values;
  if (path.empty()) return values;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::FileError& e) {
    throw UsageError(std::string("cannot read config file: ") + e.what());
  }
  for (const CLI::ConfigItem& item : items) {
    if (!item.parents.empty() || item.inputs.empty()) continue;
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '-', '_');
    values[key] = item.inputs.front();
  }
  return values;
}

int to_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + " must be an integer, got '" + text + "'");
  }
}

/// flag > LOOPVIR_<KEY> > config file.
std::optional<std::string> resolve(const CLI::Option* flag, const std::string& flag_value, const std::string& key,
                                   const std::map<std::string, std::string>& config,
                                   std::initializer_list<std::string> aliases = {}) {
  if (flag->count() > 0) return flag_value;
  std::string env = "LOOPVIR_" + key;
  std::transform(env.begin(), env.end(), env.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (const char* v = std::getenv(env.c_str()); v != nullptr && *v != '\0') return std::string(v);
  if (auto it = config.find(key); it != config.end()) return it->second;
  for (const std::string& a : aliases) {
    if (auto it = config.find(a); it != config.end()) return it->second;
  }
  return std::nullopt;
}

void emit(std::ostream& out, const Settings& s, const nlohmann::json& j, const std::string& text) {
  if (s.json) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

// ---------------------------------------------------------------------------

int cmd_neretin(const Settings& s, std::ostream& out) {
  if (!s.order) throw UsageError("neretin needs --order K");
  if (*s.order < 0) throw UsageError("--order must be >= 0");
  const NeretinTable table = neretin_table(*s.order);
  emit(out, s, table.to_json(), table.to_string());
  return kExitPass;
}

int cmd_witt(const Settings& s, int k, std::ostream& out) {
  const int N = s.order.value_or(witt_min_cutoff(k, 4));
  if (N < witt_min_cutoff(k, 1)) {
    throw UsageError("L_" + std::to_string(k) + " needs --order >= " + std::to_string(witt_min_cutoff(k, 1)));
  }
  const WittDerivation g = witt_generator(k, N);
  nlohmann::json images = nlohmann::json::object();
  std::ostringstream text;
  images["L"] = g.image_lambda().to_string();
  text << "L_" << k << "(L) = " << g.image_lambda() << "\n";
  for (int n = 1; n <= g.n_valid; ++n) {
    images["u" + std::to_string(n)] = g.image_u(n).to_string();
    text << "L_" << k << "(u" << n << ") = " << g.image_u(n) << "\n";
  }
  emit(out, s, {{"k", k}, {"cutoff", N}, {"n_valid", g.n_valid}, {"images", images}}, text.str());
  return kExitPass;
}

std::vector<CoeffPoly> parse_targets(const std::string& list) {
  std::vector<std::vector<Var>> monomials;
  int cutoff = 1;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("--targets has an empty entry");
    std::vector<Var> vars;
    std::stringstream factors(item);
    std::string f;
    while (std::getline(factors, f, '*')) {
      if (f == "1") continue;
      const Var v = Var::parse(f);
      if (v.is_central()) throw UsageError("targets are polynomials in L and u_n");
      cutoff = std::max(cutoff, v.u_index());
      vars.push_back(v);
    }
    monomials.push_back(std::move(vars));
  }
  if (monomials.empty()) throw UsageError("--targets is empty");
  std::vector<CoeffPoly> out;
  for (const auto& vars : monomials) {
    CoeffPoly t(GaussianRational(1), cutoff);
    for (Var v : vars) t *= CoeffPoly::variable(v, cutoff);
    out.push_back(t);
  }
  return out;
}

int cmd_verify(const Settings& s, const std::string& suite, bool corrupt, const std::string& targets, bool verbose,
               std::ostream& out) {
  if (s.range < 1) throw UsageError("--range must be >= 1");
  SuiteOptions opts;
  opts.range = s.range;
  opts.order = s.order;
  opts.threads = s.threads;
  opts.corrupt_phi = corrupt;
  if (!targets.empty()) opts.targets = parse_targets(targets);
  const VerificationReport rep = run_suite(suite, opts);
  emit(out, s, rep.to_json(), rep.to_text(verbose));
  return rep.pass() ? kExitPass : kExitFail;
}

template <class S>
nlohmann::json scalar_json(const S& x) {
  return ring_traits<S>::to_string(x);
}

struct EvalRequest {
  std::string loop;
  std::optional<int> P;
  std::optional<int> tau_check;
  std::vector<std::string> fd;
  std::optional<int> bieberbach;
  std::string scale;
  std::string policy = "warn";
};

template <class S>
int eval_loop(const Settings& s, const EvalRequest& req, std::ostream& out, std::ostream& err) {
  const CoefficientPolicy policy = req.policy == "reject" ? CoefficientPolicy::reject : CoefficientPolicy::warn;
  Loop<S> loop = parse_loop<S>(req.loop, policy);
  for (const std::string& w : loop.warnings) err << "warning: " << w << "\n";
  if (!req.scale.empty()) {
    if constexpr (std::is_same_v<S, Complex>) {
      loop = scale(loop, parse_complex(req.scale));
    } else {
      loop = scale(loop, GaussianRational::parse(req.scale));
    }
  }
  bool pass = true;
  nlohmann::json j{{"loop", loop.describe()}, {"scalar", s.scalar}, {"warnings", loop.warnings}};
  std::ostringstream text;
  text << "loop " << loop.describe() << "\n";
  if (req.P) {
    if (*req.P < 0) throw UsageError("--P needs K >= 0");
    const std::vector<S> P = eval_P(loop, *req.P);
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t k = 0; k < P.size(); ++k) {
      arr.push_back(scalar_json(P[k]));
      text << "P_" << k << " = " << ring_traits<S>::to_string(P[k]) << "\n";
    }
    j["P"] = arr;
  }
  if (req.tau_check) {
    VerificationReport rep;
    rep.suite = "tau-check";
    rep.parameters = {{"K", *req.tau_check}};
    rep.records = pq_tau_check(loop, *req.tau_check);
    pass = pass && rep.pass();
    j["tau_check"] = rep.to_json();
    text << rep.to_text(true);
  }
  if (req.bieberbach) {
    if constexpr (std::is_same_v<S, GaussianRational>) {
      VerificationReport rep;
      rep.suite = "bieberbach";
      rep.parameters = {{"K", *req.bieberbach}};
      rep.records = bieberbach_check(loop, *req.bieberbach);
      pass = pass && rep.pass();
      j["bieberbach"] = rep.to_json();
      text << rep.to_text(true);
    } else {
      throw UsageError("--bieberbach needs --scalar exact");
    }
  }
  if (!req.fd.empty()) {
    const int k = to_int(req.fd[0], "--fd k");
    const Var target = Var::parse(req.fd[1]);
    Loop<Complex> fl;
    if constexpr (std::is_same_v<S, Complex>) {
      fl = loop;
    } else {
      fl = to_float(loop);
    }
    const CheckRecord r = fd_oracle_check(fl, k, target);
    const Complex estimate = finite_difference_generator(fl, k, target);
    pass = pass && r.pass;
    j["fd"] = {{"k", k},
               {"target", target.name()},
               {"estimate", format_complex(estimate)},
               {"relative_error", *r.error},
               {"pass", r.pass}};
    text << "L_" << k << "(" << target.name() << ") ~ " << format_complex(estimate) << " (relative error vs symbolic "
         << *r.error << (r.pass ? ", ok" : ", FAIL") << ")\n";
  }
  j["pass"] = pass;
  emit(out, s, j, text.str());
  return pass ? kExitPass : kExitFail;
}

int cmd_eval(const Settings& s, const EvalRequest& req, std::ostream& out, std::ostream& err) {
  if (s.scalar == "f64") return eval_loop<Complex>(s, req, out, err);
  return eval_loop<GaussianRational>(s, req, out, err);
}

template <class S>
int flows_impl(const Settings& s, int k, const S& t, FlowKind kind, bool tau, std::ostream& out) {
  const int order = s.order.value_or(8);
  nlohmann::json j{{"k", k}, {"t", ring_traits<S>::to_string(t)}, {"kind", kind == FlowKind::phi ? "phi" : "psi"},
                   {"order", order}};
  std::ostringstream text;
  const std::string name = std::string(kind == FlowKind::phi ? "phi" : "psi") + "_{" + std::to_string(k) + ",t}";
  if (k >= 1) {
    const TruncSeries<S> f = flow_series(k, t, kind, order);
    j["series"] = f.to_json();
    j["variable"] = "z";
    text << name << "(z) = " << f.to_string("z") << "\n";
  } else if (k <= -1) {
    const SeriesAtInfinity<S> f = flow_series_at_infinity(k, t, kind, order);
    j["series"] = f.to_json();
    text << name << "(z) = " << f.to_string("z") << "\n";
  } else {
    const std::string closed = kind == FlowKind::phi ? "exp(-t) z" : "exp(-i t) z";
    j["closed_form"] = closed;
    text << name << "(z) = " << closed << "\n";
  }
  bool pass = true;
  if (tau) {
    VerificationReport rep;
    rep.suite = "tau-flow";
    rep.records = tau_flow_identity_records(k, order);
    pass = rep.pass();
    j["tau"] = rep.to_json();
    text << rep.to_text(true);
  }
  emit(out, s, j, text.str());
  return pass ? kExitPass : kExitFail;
}

int cmd_flows(const Settings& s, int k, const std::string& t, const std::string& kind_name, bool tau, std::ostream& out) {
  const FlowKind kind = kind_name == "psi" ? FlowKind::psi : FlowKind::phi;
  if (s.scalar == "f64") return flows_impl<Complex>(s, k, parse_complex(t), kind, tau, out);
  return flows_impl<GaussianRational>(s, k, GaussianRational::parse(t), kind, tau, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Witt/Virasoro action on loop coordinates and Neretin polynomials", "loopvir"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  std::string order_raw;
  std::string range_raw;
  std::string scalar_raw;
  std::string threads_raw;
  std::string config_path;
  auto* o_order = app.add_option("--order", order_raw, "Table order K, ring cutoff N, or expansion order");
  auto* o_range = app.add_option("--range", range_raw, "Index range R for verification grids (default 5)");
  auto* o_scalar = app.add_option("--scalar", scalar_raw, "Scalar mode: exact or f64 (default exact)");
  auto* o_threads = app.add_option("--threads", threads_raw, "Worker threads (default: all cores)");
  app.add_option("--config", config_path, "Key/value file with order, range, scalar_mode, threads");
  app.add_flag("--json", s.json, "Machine-readable output");

  auto* neretin = app.add_subcommand("neretin", "Print the Neretin polynomials P_0..P_K");

  int witt_k = 0;
  auto* witt = app.add_subcommand("witt", "Print the images of L and u_n under L_k");
  witt->add_option("--k", witt_k, "Generator index")->required();

  std::string suite;
  bool corrupt = false;
  bool verbose = false;
  std::string targets;
  auto* verify = app.add_subcommand("verify", "Run an identity verification suite");
  verify->add_option("suite", suite, "witt|cocycle|virasoro|lkp|negpair|tau|loops|all")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_flag("--corrupt-phi", corrupt, "Use c/11 in the cocycle (negative control)");
  verify->add_flag("--verbose", verbose, "List passing checks too");
  verify->add_option("--targets", targets, "Comma-separated Witt targets, e.g. L,u1,u1*u2");

  EvalRequest req;
  auto* eval = app.add_subcommand("eval", "Evaluate quantities on a concrete loop");
  eval->add_option("--loop", req.loop, "circle:a,r | pdisk:eps,m | iseries:Lambda;u1,u2,...")->required();
  eval->add_option("--P", req.P, "Print P_0..P_K at the loop");
  eval->add_option("--tau-check", req.tau_check, "Check Q_k[tau gamma] = conj(P_k[gamma]) for k <= K");
  eval->add_option("--fd", req.fd, "Finite-difference L_k(target): k target")->expected(2);
  eval->add_option("--bieberbach", req.bieberbach, "Check |v_k| <= (k+1)(4/Lambda)^k for k <= K");
  eval->add_option("--scale", req.scale, "Replace the loop by lambda * loop first");
  eval->add_option("--policy", req.policy, "Coefficient bound policy: warn or reject")
      ->check(CLI::IsMember({"warn", "reject"}));

  int flow_k = 1;
  std::string flow_t;
  std::string flow_kind = "phi";
  bool flow_tau = false;
  auto* flows = app.add_subcommand("flows", "Expand the flows phi_{k,t} and psi_{k,t}");
  flows->add_option("--k", flow_k, "Flow index")->required();
  flows->add_option("--t", flow_t, "Time parameter")->required();
  flows->add_option("--kind", flow_kind, "phi or psi")->check(CLI::IsMember({"phi", "psi"}));
  flows->add_flag("--tau", flow_tau, "Also check the tau conjugation identities for this k");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const auto config = load_config(config_path);
    if (auto v = resolve(o_order, order_raw, "order", config)) s.order = to_int(*v, "order");
    if (auto v = resolve(o_range, range_raw, "range", config)) s.range = to_int(*v, "range");
    if (auto v = resolve(o_scalar, scalar_raw, "scalar_mode", config, {"scalar"})) s.scalar = *v;
    if (auto v = resolve(o_threads, threads_raw, "threads", config)) s.threads = to_int(*v, "threads");
    if (s.scalar != "exact" && s.scalar != "f64") throw UsageError("scalar mode must be exact or f64, got '" + s.scalar + "'");
    if (s.threads < 0) throw UsageError("threads must be >= 0");

    if (neretin->parsed()) return cmd_neretin(s, out);
    if (witt->parsed()) return cmd_witt(s, witt_k, out);
    if (verify->parsed()) return cmd_verify(s, suite, corrupt, targets, verbose, out);
    if (eval->parsed()) return cmd_eval(s, req, out, err);
    if (flows->parsed()) return cmd_flows(s, flow_k, flow_t, flow_kind, flow_tau, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace loopvir
