#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rqm/check_report.hpp"
#include "rqm/spacetime.hpp"
#include "rqm/test_function.hpp"

namespace rqm {

inline constexpr const char* kToolName = "rqmcheck";
inline constexpr const char* kToolVersion = "0.1.0";
/// Largest 2s accepted in a configuration.
inline constexpr int kMaxConfigTwiceSpin = 4;

struct SuiteInfo {
  std::string name;
  std::string description;
  /// Largest 2s the suite runs; -1 when the suite does not depend on spin.
  int max_twice_spin;
};

/// The twelve suites in run order.
const std::vector<SuiteInfo>& list_suites();

/// Default tolerance of every check a suite can emit (the largest when a name
/// has several, e.g. SU(2) and SL(2,C) group laws).
const std::map<std::string, double>& default_tolerances();

/// Invalid configuration; the CLI maps it to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::vector<std::string> suites;
  std::vector<double> masses{1.0};
  std::vector<int> spins{0, 1, 2};
  std::vector<KernelVariant> variants{kAllVariants.begin(), kAllVariants.end()};
  std::vector<std::uint64_t> seeds{1};
  /// Check name -> tolerance; only values >= the default are accepted.
  std::map<std::string, double> tolerances;
  unsigned jobs = 1;
  /// Optional replay set; used by the positivity and hermiticity suites in
  /// place of random family members of matching spin.
  std::vector<TestFunction> functions;

  /// Expands "all", removes duplicates and checks every field. Throws ConfigError.
  void validate();
};

/// Reads the documented config form; unknown keys are rejected.
SuiteConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SuiteConfig& c);

struct RunReport {
  nlohmann::json config;
  std::vector<CheckReport> checks;
  /// (suite, reason) pairs for parameter combinations a suite does not cover.
  nlohmann::json skipped = nlohmann::json::array();
  double wall_seconds = 0.0;
  std::string started;
  bool overall_pass = false;
};

/// Runs one suite for a validated config; exceptions inside a check become
/// failed reports.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& config,
                                   nlohmann::json& skipped);

/// Runs every configured suite (up to `jobs` concurrently), applies tolerance
/// overrides and sorts the checks by name then inputs.
RunReport run(SuiteConfig config);

/// Everything except the "timestamp" member is a deterministic function of the config.
nlohmann::json report_to_json(const RunReport& r);
/// Columns check,param-set,measured,tolerance,pass.
std::string report_to_csv(const RunReport& r);
std::string report_summary(const RunReport& r);
nlohmann::json suites_to_json();
std::string suites_to_text();

}  // namespace rqm
