#pragma once

#include <stdexcept>

#include "collapse.hpp"
#include "scalar_defect.hpp"
#include "ym.hpp"

namespace dwb {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Malformed configuration (unknown fields, bad values, empty suites):
/// surfaces as the usage exit code, never as a failed report.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name;
  std::string op;
  json params = json::object();
};

struct Report {
  std::string name;
  std::string op;
  bool pass = false;
  json payload;            // deterministic for fixed inputs
  double duration_ms = 0;  // excluded from canonical JSON
};

/// Parse scenarios from INI-style text ([name] sections, key = value lines)
/// or from a JSON object/array; `origin` names the file for error messages.
std::vector<Scenario> parse_scenarios(const std::string& text, const std::string& origin);

/// Validates the scenario against the operation's parameter schema.
void validate_scenario(const Scenario& s);

/// Dispatch to the named operation. Invariant violations become a failed
/// report; only configuration problems throw.
Report run_scenario(const Scenario& s);

struct SuiteResult {
  std::vector<Report> reports;  // ordered by scenario name
  bool all_pass = false;
  /// Canonical aggregate (no timestamps or durations): byte-identical
  /// across runs for fixed inputs.
  json canonical() const;
};

/// Load every .ini/.json scenario file in the directory and run them with up
/// to `jobs` worker threads. Empty directories and duplicate scenario names
/// are configuration errors.
SuiteResult run_suite(const std::string& dir, int jobs = 1);

json to_json(const Report& r);

}  // namespace dwb
