#pragma once

// JSON views of fit results, coefficient rows and reports.

#include <json.hpp>

#include "nscolor/corrections.hpp"
#include "nscolor/ellipse.hpp"
#include "nscolor/optimize.hpp"
#include "nscolor/stats.hpp"

namespace nscolor {

inline nlohmann::ordered_json to_json(const FormulaCoefficients& c) {
  return {{"formula", std::string(to_string(c.formula_id))},
          {"a", c.a},
          {"b", c.b},
          {"c", c.c},
          {"d", c.d},
          {"crossover", crossover(c.a, c.b)}};
}

inline nlohmann::ordered_json to_json(const SimplexOptions& o) {
  return {{"tolerance", o.tolerance},
          {"max_evaluations", o.max_evaluations},
          {"initial_step", o.initial_step},
          {"restarts", o.restarts}};
}

inline nlohmann::ordered_json to_json(const FitSpec& s) {
  nlohmann::ordered_json params = nlohmann::ordered_json::array();
  for (const auto& p : s.parameters) {
    const char* tr = p.transform == Transform::identity ? "identity"
                     : p.transform == Transform::log    ? "log"
                                                        : "logistic";
    nlohmann::ordered_json j{{"name", p.name}, {"initial", p.initial}, {"transform", tr}};
    if (p.transform == Transform::logistic) {
      j["lower"] = p.lower;
      j["upper"] = p.upper;
    }
    params.push_back(std::move(j));
  }
  return {{"target", std::string(to_string(s.target))},
          {"base", std::string(to_string(s.base))},
          {"parameters", std::move(params)},
          {"optimizer", to_json(s.options)}};
}

inline nlohmann::ordered_json to_json(const FitResult& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& p : r.parameters) params[p.name] = p.value;
  return {{"parameters", std::move(params)},
          {"stress_before", r.stress_before},
          {"stress_after", r.stress_after},
          {"n_evaluations", r.n_evaluations}};
}

inline nlohmann::ordered_json to_json(const StressReport& s) {
  return {{"stress", s.stress}, {"f_scale", s.f_scale}, {"n", s.n}};
}

inline nlohmann::ordered_json to_json(const FTestResult& f) {
  return {{"f_value", f.f_value},
          {"lower_crit", f.lower_crit},
          {"upper_crit", f.upper_crit},
          {"verdict", f.significant ? "significant" : "not significant"}};
}

inline nlohmann::ordered_json to_json(const EllipsoidFit& f) {
  nlohmann::ordered_json j{{"k", f.k},
                           {"fit_stress", f.fit_stress},
                           {"center", {f.center.L, f.center.a, f.center.b}},
                           {"n_pairs", f.n_pairs}};
  try {
    const PlaneEllipse e = plane_ellipse(f);
    j["ellipse"] = {{"semi_major", e.semi_major},
                    {"semi_minor", e.semi_minor},
                    {"theta_deg", e.theta_deg}};
  } catch (const DomainError&) {
    j["ellipse"] = nullptr;
  }
  return j;
}

/// Reads the `k`, `center` and optional `fit_stress`/`n_pairs` fields.
inline EllipsoidFit ellipsoid_from_json(const nlohmann::json& j) {
  EllipsoidFit f;
  const auto& k = j.at("k");
  if (!k.is_array() || k.size() != 6) throw SchemaError("ellipsoid fit: k must hold 6 numbers");
  for (std::size_t i = 0; i < 6; ++i) f.k[i] = k[i].get<double>();
  if (j.contains("center")) {
    const auto& c = j.at("center");
    f.center = {c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()};
  }
  f.fit_stress = j.value("fit_stress", 0.0);
  f.n_pairs = j.value("n_pairs", std::size_t{0});
  return f;
}

inline nlohmann::ordered_json to_json(const VariabilityReport& r) {
  nlohmann::ordered_json intra = nlohmann::ordered_json::object();
  for (const auto& [obs, s] : r.intra) intra[std::to_string(obs)] = s;
  nlohmann::ordered_json inter = nlohmann::ordered_json::object();
  for (const auto& [obs, s] : r.inter) inter[std::to_string(obs)] = s;
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& g : r.groups)
    groups.push_back({{"group", g.group}, {"mean_stress", g.mean_stress}, {"n_observers", g.n_observers}});
  nlohmann::ordered_json j{{"intra", std::move(intra)}, {"inter", std::move(inter)},
                           {"inter_mean", r.inter_mean}, {"groups", std::move(groups)}};
  j["intra_mean"] = r.intra_mean ? nlohmann::ordered_json(*r.intra_mean) : nlohmann::ordered_json();
  return j;
}

}  // namespace nscolor
