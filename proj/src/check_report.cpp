#include "rqm/check_report.hpp"

#include <cmath>

namespace rqm {

CheckReport CheckReport::make(std::string name, nlohmann::json inputs, double measured,
                              double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  r.measured = measured;
  r.tolerance = tolerance;
  // NaN never passes.
  r.pass = measured <= tolerance;
  return r;
}

void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json{{"name", r.name},
                     {"inputs", r.inputs},
                     {"measured", std::isfinite(r.measured) ? nlohmann::json(r.measured)
                                                            : nlohmann::json(nullptr)},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass},
                     {"negative_control", r.negative_control},
                     {"loosened", r.loosened}};
  if (r.std_error) j["std_error"] = *r.std_error;
  if (!r.note.empty()) j["note"] = r.note;
}

void from_json(const nlohmann::json& j, CheckReport& r) {
  r.name = j.at("name").get<std::string>();
  r.inputs = j.value("inputs", nlohmann::json::object());
  r.measured = j.at("measured").is_null() ? NAN : j.at("measured").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.negative_control = j.value("negative_control", false);
  r.loosened = j.value("loosened", false);
  if (j.contains("std_error")) r.std_error = j.at("std_error").get<double>();
  r.note = j.value("note", std::string{});
}

}  // namespace rqm
