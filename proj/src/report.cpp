#include "loopvir/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace loopvir {

nlohmann::json CheckRecord::to_json() const {
  nlohmann::json j{{"identity", identity}, {"residual", residual}, {"pass", pass}};
  for (const auto& [key, value] : indices.items()) j[key] = value;
  if (!target.empty()) j["target"] = target;
  if (error) j["error"] = *error;
  if (!note.empty()) j["note"] = note;
  return j;
}

bool VerificationReport::pass() const { return failures() == 0; }

std::size_t VerificationReport::total() const {
  std::size_t n = records.size();
  for (const VerificationReport& p : parts) n += p.total();
  return n;
}

std::size_t VerificationReport::failures() const {
  auto n = static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; }));
  for (const VerificationReport& p : parts) n += p.failures();
  return n;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j{{"suite", suite},
                   {"parameters", parameters},
                   {"total", total()},
                   {"failures", failures()},
                   {"pass", pass()},
                   {"seconds", seconds}};
  if (parts.empty()) {
    nlohmann::json recs = nlohmann::json::array();
    for (const CheckRecord& r : records) recs.push_back(r.to_json());
    j[record_key] = recs;
  } else {
    nlohmann::json sub = nlohmann::json::array();
    for (const VerificationReport& p : parts) sub.push_back(p.to_json());
    j["suites"] = sub;
  }
  return j;
}

namespace {

std::string describe(const CheckRecord& r) {
  std::ostringstream os;
  os << r.identity;
  if (!r.indices.empty()) {
    os << " at";
    for (const auto& [k, v] : r.indices.items()) os << " " << k << "=" << v.dump();
  }
  if (!r.target.empty()) os << " on " << r.target;
  return os.str();
}

}  // namespace

std::string VerificationReport::to_text(bool verbose) const {
  std::ostringstream os;
  for (const VerificationReport& p : parts) os << p.to_text(verbose);
  for (const CheckRecord& r : records) {
    if (r.pass && !verbose) continue;
    os << (r.pass ? "ok   " : "FAIL ") << describe(r);
    if (!r.pass) os << ": residual " << r.residual;
    if (r.error) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " (error %.3g)", *r.error);
      os << buf;
    }
    if (!r.note.empty()) os << " [" << r.note << "]";
    os << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", seconds);
  os << suite << ": " << (total() - failures()) << "/" << total() << " passed";
  os << " (" << buf << "s)\n";
  return os.str();
}

}  // namespace loopvir
