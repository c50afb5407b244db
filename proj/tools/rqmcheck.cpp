#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rqm/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rqm::ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw rqm::ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::pair<std::string, double> parse_tolerance(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw rqm::ConfigError("tolerance override must be NAME=VALUE: " + s);
  try {
    std::size_t used = 0;
    const double v = std::stod(s.substr(eq + 1), &used);
    if (used != s.size() - eq - 1) throw std::invalid_argument(s);
    return {s.substr(0, eq), v};
  } catch (const std::logic_error&) {
    throw rqm::ConfigError("bad tolerance value in '" + s + "'");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw rqm::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical certification of Euclidean Poincare irreducible representations", "rqmcheck"};
  app.set_version_flag("--version", std::string(rqm::kToolVersion));
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run verification suites");
  std::vector<std::string> suites, variants, tolerances;
  std::vector<double> masses;
  std::vector<int> spins;
  std::vector<std::uint64_t> seeds;
  unsigned jobs = 0;
  std::string out_path, config_path, functions_path;
  bool as_json = false, as_csv = false;
  run_cmd->add_option("--suite,--suites", suites, "suite name or 'all' (repeatable, comma-separated)")
      ->delimiter(',');
  run_cmd->add_option("--mass,--masses", masses, "mass m > 0")->delimiter(',');
  run_cmd->add_option("--spin,--spins", spins, "twice the spin, 2s")->delimiter(',');
  run_cmd->add_option("--variant,--variants", variants, "right, right_dual, left, left_dual")->delimiter(',');
  run_cmd->add_option("--seed,--seeds", seeds, "random seed")->delimiter(',');
  run_cmd->add_option("--jobs", jobs, "suites run concurrently")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_path, "write the JSON report to this path");
  auto* json_flag = run_cmd->add_flag("--json", as_json, "print the JSON report on stdout");
  run_cmd->add_flag("--csv", as_csv, "print the CSV summary on stdout")->excludes(json_flag);
  run_cmd->add_option("--config", config_path, "JSON config file (default: $RQMCHECK_DEFAULT_CONFIG)");
  run_cmd->add_option("--functions", functions_path, "JSON file with test functions to replay");
  run_cmd->add_option("--tolerance", tolerances, "NAME=VALUE, loosen one default tolerance (repeatable)");

  auto* list_cmd = app.add_subcommand("list", "list the suites");
  bool list_json = false;
  list_cmd->add_flag("--json", list_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*list_cmd) {
    if (list_json)
      std::cout << rqm::suites_to_json().dump(2) << "\n";
    else
      std::cout << rqm::suites_to_text();
    return kExitPass;
  }

  rqm::SuiteConfig config;
  try {
    if (config_path.empty())
      if (const char* env = std::getenv("RQMCHECK_DEFAULT_CONFIG"); env && *env) config_path = env;
    if (!config_path.empty()) {
      config = rqm::config_from_json(read_json_file(config_path));
    }
    if (!suites.empty()) config.suites = suites;
    if (!masses.empty()) config.masses = masses;
    if (!spins.empty()) config.spins = spins;
    if (!variants.empty()) {
      config.variants.clear();
      for (const std::string& v : variants) config.variants.push_back(rqm::parse_variant(v));
    }
    if (!seeds.empty()) config.seeds = seeds;
    if (jobs > 0) config.jobs = jobs;
    for (const std::string& t : tolerances) {
      const auto [name, value] = parse_tolerance(t);
      config.tolerances[name] = value;
    }
    if (!functions_path.empty()) {
      const nlohmann::json j = read_json_file(functions_path);
      const nlohmann::json& arr = j.is_object() ? j.at("functions") : j;
      config.functions = arr.get<std::vector<rqm::TestFunction>>();
    }
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "rqmcheck: " << e.what() << "\n\n" << run_cmd->help();
    return kExitUsage;
  }

  try {
    const rqm::RunReport report = rqm::run(config);
    const nlohmann::json j = rqm::report_to_json(report);
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else if (as_csv)
      std::cout << rqm::report_to_csv(report);
    else
      std::cout << rqm::report_summary(report);
    return report.overall_pass ? kExitPass : kExitFail;
  } catch (const rqm::ConfigError& e) {
    std::cerr << "rqmcheck: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rqmcheck: " << e.what() << "\n";
    return kExitFail;
  }
}
