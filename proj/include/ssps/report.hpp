#pragma once

/// \file
/// JSON form of a verification run. Keys and their order are fixed; the
/// document carries `tool_version` so readers can detect schema changes.

#include <string>

#include <json.hpp>

#include "ssps/dde.hpp"

namespace ssps {

inline constexpr const char* kToolVersion = "ssps 1.0.0";

enum class Model { Sine, Exp };

inline const char* model_name(Model m) {
  return m == Model::Sine ? "sine" : "exp";
}

struct ReportDocument {
  Model model = Model::Sine;
  double r = 0.0;
  double modulus = 0.0;
  double offset_c = 0.0;
  double period = 2.0;
  double residual_max = 0.0;
  double antisymmetry_max = 0.0;
  double period_defect_max = 0.0;
  int quad_order = 0;
  int grid_points = 0;
  bool pass = false;
  std::string tool_version = kToolVersion;
};

inline ReportDocument make_report(Model model, double r, double modulus,
                                  double period, const ResidualReport& rep) {
  ReportDocument doc;
  doc.model = model;
  doc.r = r;
  doc.modulus = modulus;
  doc.offset_c = rep.offset_c;
  doc.period = period;
  doc.residual_max = rep.residual_max;
  doc.antisymmetry_max = rep.antisymmetry_max;
  doc.period_defect_max = rep.period_defect_max;
  doc.quad_order = rep.quad_order;
  doc.grid_points = rep.grid_points;
  doc.pass = rep.pass;
  return doc;
}

/// ordered_json keeps insertion order, so the serialized key order is stable.
inline nlohmann::ordered_json to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["model"] = model_name(doc.model);
  j["r"] = doc.r;
  j["modulus"] = doc.modulus;
  j["offset_c"] = doc.offset_c;
  j["period"] = doc.period;
  j["residual_max"] = doc.residual_max;
  j["antisymmetry_max"] = doc.antisymmetry_max;
  j["period_defect_max"] = doc.period_defect_max;
  j["quad_order"] = doc.quad_order;
  j["grid_points"] = doc.grid_points;
  j["pass"] = doc.pass;
  j["tool_version"] = doc.tool_version;
  return j;
}

inline ReportDocument report_from_json(const nlohmann::ordered_json& j) {
  ReportDocument doc;
  const std::string model = j.at("model").get<std::string>();
  if (model == "sine") {
    doc.model = Model::Sine;
  } else if (model == "exp") {
    doc.model = Model::Exp;
  } else {
    throw DomainError("report: unknown model '" + model + "'");
  }
  doc.r = j.at("r").get<double>();
  doc.modulus = j.at("modulus").get<double>();
  doc.offset_c = j.at("offset_c").get<double>();
  doc.period = j.at("period").get<double>();
  doc.residual_max = j.at("residual_max").get<double>();
  doc.antisymmetry_max = j.at("antisymmetry_max").get<double>();
  doc.period_defect_max = j.at("period_defect_max").get<double>();
  doc.quad_order = j.at("quad_order").get<int>();
  doc.grid_points = j.at("grid_points").get<int>();
  doc.pass = j.at("pass").get<bool>();
  doc.tool_version = j.at("tool_version").get<std::string>();
  return doc;
}

}  // namespace ssps
