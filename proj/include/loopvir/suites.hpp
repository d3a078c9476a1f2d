#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loopvir/loops.hpp"
#include "loopvir/poly.hpp"
#include "loopvir/report.hpp"

namespace loopvir {

struct SuiteOptions {
  int range = 5;
  /// Overrides the adaptive ring cutoff (or the expansion order for tau);
  /// must not be below what the grid needs.
  std::optional<int> order;
  /// 0 means one per hardware thread.
  int threads = 0;
  bool corrupt_phi = false;
  /// Witt targets; empty means {Lambda, u1..u4}.
  std::vector<CoeffPoly> targets;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

VerificationReport run_witt_suite(const SuiteOptions& opts);
VerificationReport run_lkp_suite(const SuiteOptions& opts);
VerificationReport run_negpair_suite(const SuiteOptions& opts);
VerificationReport run_cocycle_suite(const SuiteOptions& opts);
VerificationReport run_virasoro_suite(const SuiteOptions& opts);
VerificationReport run_tau_suite(const SuiteOptions& opts);
/// Scaling covariance, Bieberbach bound and the finite-difference oracle.
VerificationReport run_loops_suite(const SuiteOptions& opts);
VerificationReport run_all_suites(const SuiteOptions& opts);
/// Dispatches by name; throws ParseError for an unknown suite.
VerificationReport run_suite(std::string_view name, const SuiteOptions& opts);

/// Exact loops every loop check runs on.
const std::vector<std::string>& builtin_loop_specs();
/// The float panel used by the finite-difference oracle.
const std::vector<std::string>& float_panel_specs();
/// Seeded random perturbed disks z + eps z^m with Gaussian-rational eps.
std::vector<Loop<GaussianRational>> random_exact_loops(int count, std::uint32_t seed);

/// Finite-difference estimate against the symbolic image for one loop,
/// generator and coordinate; relative tolerance 1e-6.
CheckRecord fd_oracle_check(const Loop<Complex>& loop, int k, Var target);

/// Runs f(0..n-1) on up to `threads` workers; rethrows the first exception.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

}  // namespace loopvir
