#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loopvir/cli.hpp"
#include "loopvir/loops.hpp"
#include "loopvir/neretin.hpp"
#include "loopvir/suites.hpp"
#include "loopvir/witt.hpp"

namespace py = pybind11;
using namespace loopvir;

namespace {

std::string suite_json(const std::string& name, int range, std::optional<int> order, int threads, bool corrupt_phi) {
  SuiteOptions opts;
  opts.range = range;
  opts.order = order;
  opts.threads = threads;
  opts.corrupt_phi = corrupt_phi;
  return run_suite(name, opts).to_json().dump();
}

std::vector<std::string> eval_p_exact(const std::string& spec, int K) {
  std::vector<std::string> out;
  for (const GaussianRational& v : eval_P(parse_loop<GaussianRational>(spec), K)) out.push_back(v.to_string());
  return out;
}

py::dict witt_images(int k, int N) {
  const WittDerivation g = witt_generator(k, N);
  std::vector<std::string> u;
  for (int n = 1; n <= g.n_valid; ++n) u.push_back(g.image_u(n).to_string());
  py::dict d;
  d["k"] = k;
  d["cutoff"] = g.cutoff;
  d["lambda"] = g.image_lambda().to_string();
  d["u"] = u;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Witt and Virasoro actions on loop coordinates";

  py::register_exception<Error>(m, "LoopvirError", PyExc_ValueError);

  m.def("neretin_table", [](int K, int N) { return neretin_table(K, N).to_json().dump(); }, py::arg("K"),
        py::arg("N") = -1, "JSON text of P_0..P_K");
  m.def("witt_generator", &witt_images, py::arg("k"), py::arg("N"), "Images of Lambda and u_n under L_k");
  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, int range, std::optional<int> order, int threads, bool corrupt_phi) {
        py::gil_scoped_release release;
        return suite_json(name, range, order, threads, corrupt_phi);
      },
      py::arg("name"), py::arg("range") = 5, py::arg("order") = py::none(), py::arg("threads") = 0,
      py::arg("corrupt_phi") = false, "JSON text of a verification report");
  m.def("eval_P", &eval_p_exact, py::arg("loop"), py::arg("K"), "Exact P_0..P_K at a loop, as text");
  m.def(
      "eval_P_float", [](const std::string& spec, int K) { return eval_P(parse_loop<Complex>(spec), K); },
      py::arg("loop"), py::arg("K"));
  m.def(
      "pq_tau_check",
      [](const std::string& spec, int K) {
        for (const CheckRecord& r : pq_tau_check(parse_loop<GaussianRational>(spec), K)) {
          if (!r.pass) return false;
        }
        return true;
      },
      py::arg("loop"), py::arg("K"));
  m.def(
      "finite_difference_generator",
      [](const std::string& spec, int k, const std::string& target) {
        return finite_difference_generator(parse_loop<Complex>(spec), k, Var::parse(target));
      },
      py::arg("loop"), py::arg("k"), py::arg("target"));
  m.def(
      "central_charge", [](const std::string& kappa) { return central_charge(Rational::parse(kappa)).to_string(); },
      py::arg("kappa"));
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr)");
}
