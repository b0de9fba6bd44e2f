#pragma once

// STRESS-driven parameter estimation: parametric factors, the lightness
// factor line and the power exponents.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nscolor/corrections.hpp"
#include "nscolor/dataset.hpp"
#include "nscolor/formulas.hpp"
#include "nscolor/simplex.hpp"
#include "nscolor/stats.hpp"

namespace nscolor {

enum class FitTarget { kL_only, kL_kC, dl_line, power_c, magnitude_power_d };

inline std::string_view to_string(FitTarget t) {
  switch (t) {
    case FitTarget::kL_only: return "kL_only";
    case FitTarget::kL_kC: return "kL_kC";
    case FitTarget::dl_line: return "dl_line";
    case FitTarget::power_c: return "power_c";
    case FitTarget::magnitude_power_d: return "magnitude_power_d";
  }
  return "?";
}

/// How a free parameter maps to the unconstrained search space.
enum class Transform {
  identity,
  log,       ///< positive: x = exp(u)
  logistic,  ///< bounded: x = lo + (hi - lo) / (1 + exp(-u))
};

struct Parameter {
  std::string name;
  double initial = 0.0;
  Transform transform = Transform::identity;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  double to_internal(double x) const {
    switch (transform) {
      case Transform::identity: return x;
      case Transform::log: return std::log(x);
      case Transform::logistic: {
        const double t = (x - lower) / (upper - lower);
        return std::log(t / (1.0 - t));
      }
    }
    return x;
  }

  double to_external(double u) const {
    switch (transform) {
      case Transform::identity: return u;
      case Transform::log: return std::exp(u);
      case Transform::logistic: return lower + (upper - lower) / (1.0 + std::exp(-u));
    }
    return u;
  }
};

struct FitSpec {
  FitTarget target = FitTarget::kL_only;
  FormulaId base = FormulaId::ciede2000;
  std::vector<Parameter> parameters;
  SimplexOptions options;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct FitResult {
  std::vector<NamedValue> parameters;
  double stress_before = 0.0;
  double stress_after = 0.0;
  std::size_t n_evaluations = 0;

  double operator[](std::string_view name) const {
    for (const auto& p : parameters)
      if (p.name == name) return p.value;
    throw LookupError("no fitted parameter '" + std::string(name) + "'");
  }
};

using StressObjective = std::function<double(std::span<const double>)>;

/// Minimizes a STRESS-valued objective over the spec's parameters. The
/// objective receives parameters in their natural (external) units.
inline FitResult minimize_stress(const StressObjective& objective, const FitSpec& spec) {
  const auto& params = spec.parameters;
  if (params.empty()) throw OptimizationError("no parameters to fit");
  std::vector<double> u0;
  for (const auto& p : params) u0.push_back(p.to_internal(p.initial));

  std::vector<double> x(params.size());
  auto internal = [&](const std::vector<double>& u) {
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = params[i].to_external(u[i]);
    return objective(x);
  };

  FitResult res;
  for (std::size_t i = 0; i < params.size(); ++i) x[i] = params[i].initial;
  res.stress_before = objective(x);
  if (!std::isfinite(res.stress_before))
    throw OptimizationError("objective is not finite at the initial point");

  const SimplexResult sr = nelder_mead(internal, u0, spec.options);
  for (std::size_t i = 0; i < params.size(); ++i)
    res.parameters.push_back({params[i].name, params[i].to_external(sr.x[i])});
  res.stress_after = std::min(sr.value, res.stress_before);
  res.n_evaluations = sr.evaluations + 1;
  return res;
}

/// Pairs with their panel visual differences and nominal magnitude labels.
struct FitData {
  std::vector<ColorPair> pairs;
  std::vector<double> dv;
  std::vector<double> magnitude;

  std::size_t size() const { return pairs.size(); }

  /// Rows whose magnitude label equals `m`.
  FitData subset(double m) const {
    FitData out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (magnitude[i] != m) continue;
      out.pairs.push_back(pairs[i]);
      out.dv.push_back(dv[i]);
      out.magnitude.push_back(magnitude[i]);
    }
    return out;
  }
};

/// Joins pairs with the panel-mean dv of their assessments. Pairs without
/// assessments are dropped.
inline FitData make_fit_data(std::span<const PairRecord> pairs,
                             std::span<const AssessmentRecord> records) {
  const auto panel = panel_mean_dv(records);
  FitData d;
  for (const auto& p : pairs) {
    auto it = panel.find(p.pair_id);
    if (it == panel.end()) continue;
    d.pairs.push_back(p.pair());
    d.dv.push_back(it->second);
    d.magnitude.push_back(p.magnitude);
  }
  return d;
}

/// Components with parametric factors applied to unit-factor components.
/// All implemented formulas are linear in 1/k per term, so this equals a
/// fresh evaluation with the factors.
inline Components apply_factors(const Components& unit, const ParametricFactors& k) {
  return {unit.lightness / k.kL, unit.chroma / k.kC, unit.hue / k.kH,
          unit.rotation / (k.kC * k.kH)};
}

namespace detail {

inline void require_fit_data(const FitData& data, std::size_t min_n) {
  if (data.dv.size() != data.pairs.size() || data.magnitude.size() != data.pairs.size())
    throw FitError("fit data columns have different lengths");
  std::size_t nonzero = 0;
  for (double v : data.dv) {
    if (!std::isfinite(v) || v < 0.0) throw FitError("visual differences must be non-negative");
    if (v > 0.0) ++nonzero;
  }
  if (nonzero == 0) throw FitError("degenerate data: every visual difference is zero");
  if (nonzero < min_n)
    throw FitError("need at least " + std::to_string(min_n) + " pairs with nonzero dv");
}

inline std::vector<Components> unit_components(const FitData& data, FormulaId base) {
  std::vector<Components> out;
  out.reserve(data.size());
  for (const auto& p : data.pairs) {
    Components c = formula_components(base, p);
    if (base != FormulaId::ciede2000) c.rotation = 0.0;
    out.push_back(c);
  }
  return out;
}

inline double stress_or_inf(std::span<const double> a, std::span<const double> b) {
  try {
    return stress(a, b).stress;
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace detail

/// Optimizes kL (kC = kH = 1) or kL and kC (kH = 1).
inline FitResult fit_parametric_factors(const FitData& data, FormulaId base, FitTarget target,
                                        SimplexOptions options = {}) {
  if (target != FitTarget::kL_only && target != FitTarget::kL_kC)
    throw FitError("fit_parametric_factors: target must be kL_only or kL_kC");
  detail::require_fit_data(data, 10);
  const auto unit = detail::unit_components(data, base);

  FitSpec spec{target, base, {{"kL", 1.0, Transform::log}}, options};
  if (target == FitTarget::kL_kC) spec.parameters.push_back({"kC", 1.0, Transform::log});

  std::vector<double> pred(data.size());
  auto objective = [&](std::span<const double> x) {
    const ParametricFactors k{x[0], x.size() > 1 ? x[1] : 1.0, 1.0};
    for (std::size_t i = 0; i < unit.size(); ++i) pred[i] = apply_factors(unit[i], k).total();
    return detail::stress_or_inf(data.dv, pred);
  };
  return minimize_stress(objective, spec);
}

/// Per magnitude label, the parametric factor fit on that subset only.
inline std::map<double, FitResult> fit_parametric_by_magnitude(const FitData& data,
                                                              FormulaId base, FitTarget target,
                                                              SimplexOptions options = {}) {
  std::map<double, FitResult> out;
  const std::set<double> labels(data.magnitude.begin(), data.magnitude.end());
  for (double m : labels) out.emplace(m, fit_parametric_factors(data.subset(m), base, target, options));
  return out;
}

/// Slope a and intercept b of the lightness factor line, fitted through the
/// magnitude-corrected formula.
inline FitResult fit_dl_line(const FitData& data, FormulaId base, SimplexOptions options = {}) {
  detail::require_implemented(base);
  detail::require_fit_data(data, 10);
  const std::set<double> labels(data.magnitude.begin(), data.magnitude.end());
  if (labels.size() < 2)
    throw FitError("fit_dl_line: the line is unidentifiable from a single magnitude");
  const auto unit = detail::unit_components(data, base);

  FitSpec spec{FitTarget::dl_line,
               base,
               {{"a", 0.05, Transform::identity}, {"b", 0.5, Transform::log}},
               options};
  std::vector<double> pred(data.size());
  auto objective = [&](std::span<const double> x) {
    for (std::size_t i = 0; i < unit.size(); ++i) {
      if (!(x[0] * unit[i].total() + x[1] > 0.0)) return std::numeric_limits<double>::infinity();
      pred[i] = magnitude_corrected(unit[i], x[0], x[1]);
    }
    return detail::stress_or_inf(data.dv, pred);
  };
  return minimize_stress(objective, spec);
}

struct PowerOptions {
  /// Fixed (a, b) for the magnitude-power fit. When absent, the line is
  /// fitted first from the same data unless `joint` is set.
  std::optional<std::pair<double, double>> line;
  bool joint = false;
  SimplexOptions simplex;
};

/// Power exponent c (on the base formula) or d (on the magnitude-corrected
/// formula). Exponents are searched in (0, 2).
inline FitResult fit_power(const FitData& data, FormulaId base, FitTarget kind,
                           const PowerOptions& opt = {}) {
  if (kind != FitTarget::power_c && kind != FitTarget::magnitude_power_d)
    throw FitError("fit_power: target must be power_c or magnitude_power_d");
  detail::require_implemented(base);
  detail::require_fit_data(data, 10);
  const auto unit = detail::unit_components(data, base);
  const Parameter exponent{kind == FitTarget::power_c ? "c" : "d", 1.0, Transform::logistic,
                           0.0, 2.0};
  std::vector<double> pred(data.size());

  if (kind == FitTarget::power_c) {
    FitSpec spec{kind, base, {exponent}, opt.simplex};
    std::vector<double> base_de(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i) base_de[i] = unit[i].total();
    auto objective = [&](std::span<const double> x) {
      for (std::size_t i = 0; i < unit.size(); ++i) pred[i] = std::pow(base_de[i], x[0]);
      return detail::stress_or_inf(data.dv, pred);
    };
    return minimize_stress(objective, spec);
  }

  if (opt.joint) {
    FitSpec spec{kind,
                 base,
                 {{"a", 0.05, Transform::identity}, {"b", 0.5, Transform::log}, exponent},
                 opt.simplex};
    auto objective = [&](std::span<const double> x) {
      for (std::size_t i = 0; i < unit.size(); ++i) {
        if (!(x[0] * unit[i].total() + x[1] > 0.0)) return std::numeric_limits<double>::infinity();
        pred[i] = std::pow(magnitude_corrected(unit[i], x[0], x[1]), x[2]);
      }
      return detail::stress_or_inf(data.dv, pred);
    };
    return minimize_stress(objective, spec);
  }

  std::pair<double, double> line;
  if (opt.line) {
    line = *opt.line;
  } else {
    const FitResult dl = fit_dl_line(data, base, opt.simplex);
    line = {dl["a"], dl["b"]};
  }
  std::vector<double> corrected(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i)
    corrected[i] = magnitude_corrected(unit[i], line.first, line.second);

  FitSpec spec{kind, base, {exponent}, opt.simplex};
  auto objective = [&](std::span<const double> x) {
    for (std::size_t i = 0; i < unit.size(); ++i) pred[i] = std::pow(corrected[i], x[0]);
    return detail::stress_or_inf(data.dv, pred);
  };
  FitResult r = minimize_stress(objective, spec);
  r.parameters.insert(r.parameters.begin(), {{"a", line.first}, {"b", line.second}});
  return r;
}

}  // namespace nscolor
