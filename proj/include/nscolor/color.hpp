#pragma once

// CIE 1976 L*a*b* coordinates, XYZ conversion and component differences.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nscolor/errors.hpp"

namespace nscolor {

struct ColorXYZ {
  double X = 0.0;
  double Y = 0.0;
  double Z = 0.0;
};

struct WhitePoint {
  double Xn = 0.0;
  double Yn = 0.0;
  double Zn = 0.0;
};

/// D65 / 1964 white used by the worked no-separation example.
inline constexpr WhitePoint kWorkedExampleWhite{95.78, 100.00, 104.61};

struct ColorLab {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const ColorLab&, const ColorLab&) = default;
};

struct ChromaHue {
  double chroma = 0.0;
  double hue_deg = 0.0;  ///< in [0, 360)
};

namespace detail {

inline constexpr double kLabEpsilon = 216.0 / 24389.0;
inline constexpr double kLabKappa = 24389.0 / 27.0;

inline double lab_f(double t) {
  return t > kLabEpsilon ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

inline double wrap_radians(double h) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  h = std::fmod(h, two_pi);
  return h < 0.0 ? h + two_pi : h;
}

inline double to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace detail

inline ColorLab xyz_to_lab(const ColorXYZ& xyz, const WhitePoint& white) {
  if (!(white.Xn > 0.0 && white.Yn > 0.0 && white.Zn > 0.0))
    throw DomainError("white point components must be positive");
  for (double v : {xyz.X, xyz.Y, xyz.Z}) {
    if (!std::isfinite(v) || v < 0.0)
      throw DomainError("tristimulus values must be finite and non-negative");
  }
  const double fx = detail::lab_f(xyz.X / white.Xn);
  const double fy = detail::lab_f(xyz.Y / white.Yn);
  const double fz = detail::lab_f(xyz.Z / white.Zn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

/// Hue in radians, [0, 2pi). Achromatic colors get 0.
inline double hue_radians(double a, double b) {
  if (a == 0.0 && b == 0.0) return 0.0;
  return detail::wrap_radians(std::atan2(b, a));
}

/// Chroma and hue angle in degrees. An achromatic color (a* = b* = 0)
/// reports C = 0, h = 0.
inline ChromaHue chroma_hue(const ColorLab& lab) {
  return {std::hypot(lab.a, lab.b), detail::to_degrees(hue_radians(lab.a, lab.b))};
}

/// Signed CIELAB hue difference. Sign follows a1*b2 - a2*b1, i.e. positive
/// when the sample lies counterclockwise of the reference.
inline double hue_difference(double a1, double b1, double a2, double b2) {
  const double c1c2 = std::hypot(a1, b1) * std::hypot(a2, b2);
  const double dot = a1 * a2 + b1 * b2;
  const double cross = a1 * b2 - a2 * b1;
  // C1C2 - dot = cross^2 / (C1C2 + dot); the quotient form avoids
  // cancellation for nearby hues.
  if (dot > 0.0) return cross * std::sqrt(2.0 / (c1c2 + dot));
  const double mag = std::sqrt(std::max(0.0, 2.0 * (c1c2 - dot)));
  return cross < 0.0 ? -mag : mag;
}

/// A reference/sample pair with CIELAB differences (sample minus reference).
struct ColorPair {
  ColorLab reference;
  ColorLab sample;
  double dL = 0.0;
  double da = 0.0;
  double db = 0.0;
  double dC = 0.0;
  double dH = 0.0;
  double dE = 0.0;
};

inline ColorPair pair_differences(const ColorLab& reference, const ColorLab& sample) {
  ColorPair p{reference, sample};
  p.dL = sample.L - reference.L;
  p.da = sample.a - reference.a;
  p.db = sample.b - reference.b;
  p.dC = std::hypot(sample.a, sample.b) - std::hypot(reference.a, reference.b);
  p.dH = hue_difference(reference.a, reference.b, sample.a, sample.b);
  p.dE = std::sqrt(p.dL * p.dL + p.da * p.da + p.db * p.db);
  return p;
}

}  // namespace nscolor
