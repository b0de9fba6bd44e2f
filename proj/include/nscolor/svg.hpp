#pragma once

// Minimal SVG 1.1 writer for a*b*-plane chromaticity ellipses.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nscolor/ellipse.hpp"

namespace nscolor {

struct PlotEntry {
  EllipsoidFit fit;
  std::optional<double> magnitude;  ///< selects the stroke color
};

struct PlotOptions {
  double magnify = 1.0;  ///< ellipse size multiplier; centers are not moved
  double extent = 100.0;  ///< a* and b* span [-extent, extent]
};

namespace detail {

inline constexpr double kSvgUnitsPerLab = 10.0;

inline std::string fmt3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

inline const char* magnitude_color(std::optional<double> m) {
  if (!m) return "#555555";
  if (*m == 1.0) return "blue";
  if (*m == 2.0) return "red";
  if (*m == 4.0) return "black";
  if (*m == 8.0) return "green";
  return "#555555";
}

}  // namespace detail

/// One path element per ellipse. 1 CIELAB unit = 10 user units; +b* points up.
inline std::string render_ellipses_svg(const std::vector<PlotEntry>& entries,
                                       const PlotOptions& opt = {}) {
  using detail::fmt3;
  const double s = detail::kSvgUnitsPerLab;
  const double half = opt.extent * s;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt3(-half)
      << ' ' << fmt3(-half) << ' ' << fmt3(2 * half) << ' ' << fmt3(2 * half) << "\" width=\""
      << fmt3(2 * half) << "\" height=\"" << fmt3(2 * half) << "\">\n"
      << "  <g id=\"axes\" stroke=\"#999999\" stroke-width=\"2\">\n"
      << "    <line x1=\"" << fmt3(-half) << "\" y1=\"0.000\" x2=\"" << fmt3(half)
      << "\" y2=\"0.000\"/>\n"
      << "    <line x1=\"0.000\" y1=\"" << fmt3(-half) << "\" x2=\"0.000\" y2=\"" << fmt3(half)
      << "\"/>\n"
      << "  </g>\n"
      << "  <text x=\"" << fmt3(half - 40) << "\" y=\"-10.000\" font-size=\"28\">a*</text>\n"
      << "  <text x=\"10.000\" y=\"" << fmt3(-half + 30) << "\" font-size=\"28\">b*</text>\n"
      << "  <g id=\"ellipses\" fill=\"none\" stroke-width=\"2\">\n";
  for (const auto& e : entries) {
    const PlaneEllipse g = plane_ellipse(e.fit);
    const double rx = g.semi_major * opt.magnify * s;
    const double ry = g.semi_minor * opt.magnify * s;
    const double th = g.theta_deg * std::numbers::pi / 180.0;
    const double cx = e.fit.center.a * s, cy = -e.fit.center.b * s;
    const double dx = rx * std::cos(th), dy = -rx * std::sin(th);
    const std::string rot = fmt3(g.theta_deg == 0.0 ? 0.0 : -g.theta_deg);
    out << "    <path stroke=\"" << detail::magnitude_color(e.magnitude) << "\" d=\"M "
        << fmt3(cx + dx) << ' ' << fmt3(cy + dy) << " A " << fmt3(rx) << ' ' << fmt3(ry) << ' '
        << rot << " 1 0 " << fmt3(cx - dx) << ' ' << fmt3(cy - dy) << " A " << fmt3(rx) << ' '
        << fmt3(ry) << ' ' << rot << " 1 0 " << fmt3(cx + dx) << ' ' << fmt3(cy + dy)
        << " Z\"/>\n";
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

}  // namespace nscolor
