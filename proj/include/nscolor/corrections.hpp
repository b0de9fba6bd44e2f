#pragma once

// Magnitude, power and magnitude-power corrections over any base formula,
// with the optimized per-formula coefficient table.

#include <array>
#include <cmath>
#include <string>

#include "nscolor/formulas.hpp"

namespace nscolor {

struct FormulaCoefficients {
  FormulaId formula_id = FormulaId::ciede2000;
  double a = 0.0;  ///< slope of the lightness factor line
  double b = 0.0;  ///< intercept of the lightness factor line
  double c = 1.0;  ///< exponent of the power correction
  double d = 1.0;  ///< exponent of the magnitude-power correction
};

inline constexpr std::array<FormulaCoefficients, 5> kCoefficientTable{{
    {FormulaId::cielab, 0.05, 0.22, 0.72, 0.95},
    {FormulaId::ciede2000, 0.08, 0.27, 0.70, 0.91},
    {FormulaId::cie94, 0.08, 0.34, 0.73, 0.94},
    {FormulaId::cam02_ucs, 0.07, 0.28, 0.72, 0.93},
    {FormulaId::cam16_ucs, 0.07, 0.27, 0.73, 0.93},
}};

inline FormulaCoefficients registry(FormulaId id) {
  for (const auto& row : kCoefficientTable)
    if (row.formula_id == id) return row;
  throw LookupError("no coefficients for formula " + std::string(to_string(id)));
}

/// D_L = a*de + b; must be positive.
inline double lightness_factor(double de, double a, double b) {
  const double d_l = a * de + b;
  if (!(d_l > 0.0)) throw DomainError("lightness factor must be positive");
  return d_l;
}

/// Colour difference at which the lightness factor reaches 1.
inline double crossover(double a, double b) {
  if (!(a > 0.0)) throw DomainError("crossover requires a positive slope");
  return (1.0 - b) / a;
}

enum class CorrectionKind { magnitude, power, magnitude_power };

inline CorrectionKind parse_correction(std::string_view s) {
  if (s == "magnitude" || s == "de1") return CorrectionKind::magnitude;
  if (s == "power" || s == "de2") return CorrectionKind::power;
  if (s == "magnitude_power" || s == "magpower" || s == "de3")
    return CorrectionKind::magnitude_power;
  throw LookupError("unknown correction '" + std::string(s) + "'");
}

namespace detail {

inline void require_implemented(FormulaId base) {
  if (base == FormulaId::cam02_ucs || base == FormulaId::cam16_ucs)
    throw NotImplementedError("formula " + std::string(to_string(base)) + " not implemented");
}

}  // namespace detail

/// Magnitude-corrected difference: lightness term divided by D_L, where D_L
/// is evaluated once at the uncorrected base difference.
inline double magnitude_corrected(const Components& c, double a, double b) {
  const double d_l = lightness_factor(c.total(), a, b);
  const double l = c.lightness / d_l;
  const double r = l * l + c.chroma * c.chroma + c.hue * c.hue + c.rotation;
  return r > 0.0 ? std::sqrt(r) : 0.0;
}

/// Corrected difference from precomputed base components. The rotation
/// term must be zero for every base except CIEDE2000.
inline double corrected_delta_e(CorrectionKind kind, FormulaId base, Components comps,
                                const FormulaCoefficients& coeffs) {
  detail::require_implemented(base);
  if (base != FormulaId::ciede2000) comps.rotation = 0.0;
  switch (kind) {
    case CorrectionKind::magnitude:
      return magnitude_corrected(comps, coeffs.a, coeffs.b);
    case CorrectionKind::power:
      return std::pow(comps.total(), coeffs.c);
    case CorrectionKind::magnitude_power:
      return std::pow(magnitude_corrected(comps, coeffs.a, coeffs.b), coeffs.d);
  }
  return 0.0;
}

inline double corrected_delta_e(CorrectionKind kind, FormulaId base, const ColorPair& pair,
                                const FormulaCoefficients& coeffs) {
  detail::require_implemented(base);
  return corrected_delta_e(kind, base, formula_components(base, pair), coeffs);
}

/// Base formula with its lightness, chroma and hue terms divided by the
/// given factors.
inline double parametric_delta_e(FormulaId base, const ColorPair& pair,
                                 const ParametricFactors& factors) {
  return formula_components(base, pair, factors).total();
}

}  // namespace nscolor
