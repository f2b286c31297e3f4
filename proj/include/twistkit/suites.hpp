#pragma once

// Seeded verification suites across all modules.  A suite runs a fixed list
// of named checks against a config (dimension, sample count, seed, tolerance)
// and reports one record per check; reports are deterministic for a fixed
// config apart from the wall time field.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "twistkit/types.hpp"

namespace twistkit {

struct SuiteConfig {
  std::string suite = "all";
  int dim = 2;  // the n parameter handed to dimension-dependent checks
  int samples = 50;
  std::uint64_t seed = 42;
  double tol = 1e-8;
};

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "indeterminate"
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CheckResult> checks;
  double wall_time_ms = 0.0;

  bool pass() const;  // every check passed
};

struct SuiteInfo {
  std::string name;
  std::string description;
};

// Stable alphabetical registry, "all" included.
std::vector<SuiteInfo> list_suites();

// Runs the named suite.  Unknown names raise std::invalid_argument (a usage
// error, not a failed run); an IndeterminateError inside a check marks that
// check "indeterminate" and fails the run.
SuiteReport run_suite(const SuiteConfig& config);

nlohmann::ordered_json report_to_json(const SuiteReport& report);
std::string report_to_text(const SuiteReport& report);

}  // namespace twistkit
