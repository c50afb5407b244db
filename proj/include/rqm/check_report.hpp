#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace rqm {

/// Result of one verification: measured deviation against a tolerance.
///
/// For a negative control `pass` still means "measured <= tolerance"; the
/// run-level verdict expects negative controls to fail.
struct CheckReport {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool negative_control = false;
  bool loosened = false;
  std::optional<double> std_error;
  std::string note;

  static CheckReport make(std::string name, nlohmann::json inputs, double measured, double tolerance);

  /// True when this check contributes positively to an overall verdict.
  bool satisfied() const { return negative_control ? !pass : pass; }
};

void to_json(nlohmann::json& j, const CheckReport& r);
void from_json(const nlohmann::json& j, CheckReport& r);

}  // namespace rqm
