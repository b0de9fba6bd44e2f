#pragma once

// Colour-difference formulas: CIELAB, CIE94, CMC(l:c), CIEDE2000 and the
// no-separation formula built on top of CIEDE2000.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "nscolor/color.hpp"
#include "nscolor/errors.hpp"

namespace nscolor {

enum class FormulaId { cielab, cmc, cie94, ciede2000, cam02_ucs, cam16_ucs };

inline constexpr std::array<FormulaId, 6> kAllFormulas{
    FormulaId::cielab,    FormulaId::cmc,       FormulaId::cie94,
    FormulaId::ciede2000, FormulaId::cam02_ucs, FormulaId::cam16_ucs};

inline std::string_view to_string(FormulaId id) {
  switch (id) {
    case FormulaId::cielab: return "CIELAB";
    case FormulaId::cmc: return "CMC";
    case FormulaId::cie94: return "CIE94";
    case FormulaId::ciede2000: return "CIEDE2000";
    case FormulaId::cam02_ucs: return "CAM02-UCS";
    case FormulaId::cam16_ucs: return "CAM16-UCS";
  }
  return "?";
}

/// Case-insensitive; accepts the display names and lowercase aliases such
/// as "cam16ucs" or "de2000".
inline FormulaId parse_formula(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "cielab" || key == "deab" || key == "lab") return FormulaId::cielab;
  if (key == "cmc") return FormulaId::cmc;
  if (key == "cie94" || key == "de94") return FormulaId::cie94;
  if (key == "ciede2000" || key == "de2000" || key == "de00") return FormulaId::ciede2000;
  if (key == "cam02ucs") return FormulaId::cam02_ucs;
  if (key == "cam16ucs") return FormulaId::cam16_ucs;
  throw LookupError("unknown formula '" + std::string(name) + "'");
}

/// Per-application divisors of the lightness, chroma and hue terms.
struct ParametricFactors {
  double kL = 1.0;
  double kC = 1.0;
  double kH = 1.0;
};

inline void validate(const ParametricFactors& f) {
  if (!(f.kL > 0.0 && f.kC > 0.0 && f.kH > 0.0))
    throw DomainError("parametric factors must be positive");
}

/// Weighted lightness, chroma and hue terms of a formula plus the rotation
/// cross-term (already multiplied out). Only CIEDE2000 has a nonzero rotation.
struct Components {
  double lightness = 0.0;
  double chroma = 0.0;
  double hue = 0.0;
  double rotation = 0.0;

  double total() const {
    const double r = lightness * lightness + chroma * chroma + hue * hue + rotation;
    return r > 0.0 ? std::sqrt(r) : 0.0;
  }
};

struct De2000Breakdown {
  double dL_prime = 0.0;
  double dC_prime = 0.0;
  double dH_prime = 0.0;
  double rt_term = 0.0;
  double de00 = 0.0;

  Components components() const { return {dL_prime, dC_prime, dH_prime, rt_term}; }
};

struct NsResult {
  double d_l = 0.0;
  double de_ns = 0.0;
  double de00 = 0.0;
};

inline double delta_e_cielab(const ColorPair& p) {
  return std::sqrt(p.dL * p.dL + p.da * p.da + p.db * p.db);
}

inline Components cie94_components(const ColorPair& p, const ParametricFactors& k) {
  validate(k);
  const double c_ref = std::hypot(p.reference.a, p.reference.b);
  const double sc = 1.0 + 0.045 * c_ref;
  const double sh = 1.0 + 0.015 * c_ref;
  return {p.dL / k.kL, p.dC / (k.kC * sc), p.dH / (k.kH * sh), 0.0};
}

/// CIE94 with S_C and S_H driven by the reference chroma.
inline double delta_e_cie94(const ColorPair& p, double kL = 1.0, double kC = 1.0,
                            double kH = 1.0) {
  return cie94_components(p, {kL, kC, kH}).total();
}

/// CMC(l:c) components; `kH` divides the hue term and is 1 in the
/// textbook formula. The reference color is the standard.
inline Components cmc_components(const ColorPair& p, double l, double c, double kH = 1.0) {
  if (!(l > 0.0 && c > 0.0 && kH > 0.0))
    throw DomainError("CMC weights l and c must be positive");
  const double L1 = p.reference.L;
  const double C1 = std::hypot(p.reference.a, p.reference.b);
  const double h1 = detail::to_degrees(hue_radians(p.reference.a, p.reference.b));

  const double sl = L1 < 16.0 ? 0.511 : 0.040975 * L1 / (1.0 + 0.01765 * L1);
  const double sc = 0.0638 * C1 / (1.0 + 0.0131 * C1) + 0.638;
  const double c4 = C1 * C1 * C1 * C1;
  const double f = std::sqrt(c4 / (c4 + 1900.0));
  const double t = (h1 >= 164.0 && h1 <= 345.0)
                       ? 0.56 + std::abs(0.2 * std::cos(detail::to_radians(h1 + 168.0)))
                       : 0.36 + std::abs(0.4 * std::cos(detail::to_radians(h1 + 35.0)));
  const double sh = sc * (f * t + 1.0 - f);
  return {p.dL / (l * sl), p.dC / (c * sc), p.dH / (kH * sh), 0.0};
}

inline double delta_e_cmc(const ColorPair& p, double l = 1.0, double c = 1.0) {
  return cmc_components(p, l, c).total();
}

/// CIEDE2000 with its weighted terms exposed. Angles are handled in radians.
inline De2000Breakdown delta_e_ciede2000(const ColorLab& ref, const ColorLab& smp,
                                         double kL = 1.0, double kC = 1.0,
                                         double kH = 1.0) {
  validate(ParametricFactors{kL, kC, kH});
  using std::numbers::pi;
  constexpr double pow25_7 = 6103515625.0;

  const double c_mean = 0.5 * (std::hypot(ref.a, ref.b) + std::hypot(smp.a, smp.b));
  const double c_mean7 = std::pow(c_mean, 7.0);
  const double g = 0.5 * (1.0 - std::sqrt(c_mean7 / (c_mean7 + pow25_7)));

  const double a1 = (1.0 + g) * ref.a;
  const double a2 = (1.0 + g) * smp.a;
  const double c1 = std::hypot(a1, ref.b);
  const double c2 = std::hypot(a2, smp.b);
  const double h1 = hue_radians(a1, ref.b);
  const double h2 = hue_radians(a2, smp.b);
  const bool achromatic = c1 * c2 == 0.0;

  const double dL = smp.L - ref.L;
  const double dC = c2 - c1;
  double dh = 0.0;
  if (!achromatic) {
    dh = h2 - h1;
    if (dh > pi) dh -= 2.0 * pi;
    else if (dh < -pi) dh += 2.0 * pi;
  }
  const double dH = 2.0 * std::sqrt(c1 * c2) * std::sin(0.5 * dh);

  const double l_mean = 0.5 * (ref.L + smp.L);
  const double cp_mean = 0.5 * (c1 + c2);
  double h_mean = h1 + h2;
  if (!achromatic) {
    if (std::abs(h1 - h2) <= pi) h_mean *= 0.5;
    else if (h_mean < 2.0 * pi) h_mean = 0.5 * (h_mean + 2.0 * pi);
    else h_mean = 0.5 * (h_mean - 2.0 * pi);
  }

  const double t = 1.0 - 0.17 * std::cos(h_mean - pi / 6.0) + 0.24 * std::cos(2.0 * h_mean) +
                   0.32 * std::cos(3.0 * h_mean + pi / 30.0) -
                   0.20 * std::cos(4.0 * h_mean - 63.0 * pi / 180.0);
  const double hz = (detail::to_degrees(h_mean) - 275.0) / 25.0;
  const double d_theta = (pi / 6.0) * std::exp(-hz * hz);
  const double cp7 = std::pow(cp_mean, 7.0);
  const double rc = 2.0 * std::sqrt(cp7 / (cp7 + pow25_7));
  const double l50 = (l_mean - 50.0) * (l_mean - 50.0);
  const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
  const double sc = 1.0 + 0.045 * cp_mean;
  const double sh = 1.0 + 0.015 * cp_mean * t;
  const double rt = -std::sin(2.0 * d_theta) * rc;

  De2000Breakdown out;
  out.dL_prime = dL / (kL * sl);
  out.dC_prime = dC / (kC * sc);
  out.dH_prime = dH / (kH * sh);
  out.rt_term = rt * out.dC_prime * out.dH_prime;
  out.de00 = out.components().total();
  return out;
}

inline De2000Breakdown delta_e_ciede2000(const ColorPair& p, double kL = 1.0,
                                         double kC = 1.0, double kH = 1.0) {
  return delta_e_ciede2000(p.reference, p.sample, kL, kC, kH);
}

/// Lightness divisor of the no-separation formula as a function of the
/// pair's CIEDE2000 difference.
inline double ns_lightness_factor(double de00) { return 0.08 * de00 + 0.27; }

inline NsResult delta_e_ns(const ColorLab& ref, const ColorLab& smp) {
  const De2000Breakdown bd = delta_e_ciede2000(ref, smp);
  const double d_l = ns_lightness_factor(bd.de00);
  const double l = bd.dL_prime / d_l;
  const double r = l * l + bd.dC_prime * bd.dC_prime + bd.dH_prime * bd.dH_prime + bd.rt_term;
  return {d_l, r > 0.0 ? std::sqrt(r) : 0.0, bd.de00};
}

/// Weighted components of any implemented base formula. For CMC the
/// lightness and chroma factors play the role of l and c.
inline Components formula_components(FormulaId id, const ColorPair& p,
                                     const ParametricFactors& k = {}) {
  validate(k);
  switch (id) {
    case FormulaId::cielab:
      return {p.dL / k.kL, p.dC / k.kC, p.dH / k.kH, 0.0};
    case FormulaId::cie94:
      return cie94_components(p, k);
    case FormulaId::cmc:
      return cmc_components(p, k.kL, k.kC, k.kH);
    case FormulaId::ciede2000:
      return delta_e_ciede2000(p, k.kL, k.kC, k.kH).components();
    case FormulaId::cam02_ucs:
    case FormulaId::cam16_ucs:
      break;
  }
  throw NotImplementedError("formula " + std::string(to_string(id)) + " not implemented");
}

}  // namespace nscolor
