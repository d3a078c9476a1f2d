#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace loopvir {

/// Outcome of one identity evaluated at one index tuple.
struct CheckRecord {
  std::string identity;
  /// Index values, e.g. {"n": 2, "m": -1}.
  nlohmann::json indices = nlohmann::json::object();
  /// The polynomial the identity was applied to, when there is one.
  std::string target;
  /// Canonical text of the residual ("0" on success).
  std::string residual = "0";
  bool pass = false;
  /// Numeric error for floating-point checks.
  std::optional<double> error;
  std::string note;

  nlohmann::json to_json() const;
};

struct VerificationReport {
  std::string suite;
  /// "pairs" for the Witt grid, "checks" elsewhere.
  std::string record_key = "checks";
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<CheckRecord> records;
  /// Sub-reports of an aggregate run.
  std::vector<VerificationReport> parts;
  double seconds = 0.0;

  bool pass() const;
  std::size_t total() const;
  std::size_t failures() const;

  nlohmann::json to_json() const;
  /// One line per failing record plus a summary line.
  std::string to_text(bool verbose = false) const;
};

}  // namespace loopvir
