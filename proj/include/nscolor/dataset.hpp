#pragma once

// Experiment data model: color centers, designed pairs, the systematic
// design generator and a synthetic observer panel.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nscolor/color.hpp"
#include "nscolor/corrections.hpp"
#include "nscolor/formulas.hpp"
#include "nscolor/stats.hpp"

namespace nscolor {

struct ColorCenter {
  std::int64_t id = 0;
  std::string name;
  ColorLab lab;
};

/// The eleven CIE centers (D65 / 1964 observer).
inline std::vector<ColorCenter> canonical_centers() {
  return {
      {1, "Gray", {61.1, -3.2, 3.2}},
      {2, "Red", {41.0, 33.2, 25.5}},
      {3, "High-chroma orange", {60.3, 33.0, 64.3}},
      {4, "Yellow", {84.1, -6.7, 50.4}},
      {5, "High-chroma yellow green", {63.2, -29.3, 44.1}},
      {6, "Green", {56.2, -32.5, 4.9}},
      {7, "High-chroma green", {56.0, -45.7, 5.7}},
      {8, "Blue green", {50.6, -18.7, -6.9}},
      {9, "Blue", {37.0, -1.3, -27.9}},
      {10, "High-chroma purple", {45.4, 18.9, -25.0}},
      {11, "Black", {29.8, -3.1, 2.3}},
  };
}

inline constexpr std::array<double, 4> kCanonicalMagnitudes{1.0, 2.0, 4.0, 8.0};

/// Plane in which a designed pair varies; the third attribute is held fixed.
enum class Plane { La, Lb, ab };

inline std::string_view to_string(Plane p) {
  switch (p) {
    case Plane::La: return "La";
    case Plane::Lb: return "Lb";
    case Plane::ab: return "ab";
  }
  return "?";
}

inline Plane parse_plane(std::string_view s) {
  if (s == "La") return Plane::La;
  if (s == "Lb") return Plane::Lb;
  if (s == "ab") return Plane::ab;
  throw SchemaError("unknown plane '" + std::string(s) + "'");
}

/// Directions per plane for each center and magnitude.
inline constexpr int kDirectionsLa = 7;
inline constexpr int kDirectionsLb = 7;
inline constexpr int kDirectionsAb = 9;
inline constexpr int kPairsPerBlock = kDirectionsLa + kDirectionsLb + kDirectionsAb;

struct PairRecord {
  std::int64_t pair_id = 0;
  std::int64_t center_id = 0;
  Plane plane = Plane::ab;
  double magnitude = 1.0;
  ColorLab reference;
  ColorLab sample;

  ColorPair pair() const { return pair_differences(reference, sample); }

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct ExperimentDesign {
  std::vector<ColorCenter> centers;
  std::vector<PairRecord> pairs;
};

/// Equal-angle directions starting at 0 in each plane; the sample sits at
/// exactly `magnitude` CIELAB units from the center. Pair ids run from 1
/// in center, magnitude, plane order.
inline ExperimentDesign generate_design(const std::vector<ColorCenter>& centers,
                                        std::span<const double> magnitudes) {
  for (double m : magnitudes)
    if (!(m > 0.0)) throw DomainError("design magnitudes must be positive");
  ExperimentDesign design{centers, {}};
  design.pairs.reserve(centers.size() * magnitudes.size() * kPairsPerBlock);
  std::int64_t next_id = 1;
  for (const auto& c : centers) {
    for (double m : magnitudes) {
      auto emit = [&](Plane plane, int count) {
        for (int i = 0; i < count; ++i) {
          const double ang = 2.0 * std::numbers::pi * i / count;
          const double u = m * std::cos(ang), v = m * std::sin(ang);
          ColorLab s = c.lab;
          switch (plane) {
            case Plane::La: s.L += u; s.a += v; break;
            case Plane::Lb: s.L += u; s.b += v; break;
            case Plane::ab: s.a += u; s.b += v; break;
          }
          design.pairs.push_back({next_id++, c.id, plane, m, c.lab, s});
        }
      };
      emit(Plane::La, kDirectionsLa);
      emit(Plane::Lb, kDirectionsLb);
      emit(Plane::ab, kDirectionsAb);
    }
  }
  return design;
}

inline ExperimentDesign canonical_design() {
  return generate_design(canonical_centers(), kCanonicalMagnitudes);
}

inline std::map<std::int64_t, PairLabels> pair_labels(std::span<const PairRecord> pairs) {
  std::map<std::int64_t, PairLabels> out;
  for (const auto& p : pairs)
    out[p.pair_id] = {p.center_id, std::string(to_string(p.plane)), p.magnitude};
  return out;
}

/// Model the synthetic panel is drawn from.
struct GroundTruth {
  enum class Model { original, magnitude, power, magnitude_power, ns };

  FormulaId base = FormulaId::ciede2000;
  Model model = Model::ns;
  ParametricFactors factors;
  FormulaCoefficients coeffs = registry(FormulaId::ciede2000);

  double evaluate(const ColorPair& p) const {
    switch (model) {
      case Model::original:
        return parametric_delta_e(base, p, factors);
      case Model::ns:
        return delta_e_ns(p.reference, p.sample).de_ns;
      case Model::magnitude:
        return corrected_delta_e(CorrectionKind::magnitude, base, p, coeffs);
      case Model::power:
        return corrected_delta_e(CorrectionKind::power, base, p, coeffs);
      case Model::magnitude_power:
        return corrected_delta_e(CorrectionKind::magnitude_power, base, p, coeffs);
    }
    return 0.0;
  }
};

inline GroundTruth::Model parse_truth_model(std::string_view s) {
  using M = GroundTruth::Model;
  if (s == "original") return M::original;
  if (s == "magnitude") return M::magnitude;
  if (s == "power") return M::power;
  if (s == "magnitude_power" || s == "magpower") return M::magnitude_power;
  if (s == "ns") return M::ns;
  throw LookupError("unknown ground-truth model '" + std::string(s) + "'");
}

struct SynthesisOptions {
  double noise_sigma = 0.0;
  int n_observers = 19;
  std::uint64_t seed = 1;
  /// Pairs of these centers are assessed a second time in session 2.
  std::set<std::int64_t> repeat_centers;
};

/// Each observer reports truth * lognormal(0, sigma), quantized through
/// the gray-scale law: gs = clamp(dv_to_gs(dv), 1, 8) and dv = gs_to_dv(gs).
inline std::vector<AssessmentRecord> synthesize_assessments(const ExperimentDesign& design,
                                                            const GroundTruth& truth,
                                                            const SynthesisOptions& opt) {
  if (opt.noise_sigma < 0.0) throw DomainError("noise sigma must be non-negative");
  if (opt.n_observers < 1) throw DomainError("need at least one observer");

  std::vector<double> truth_dv;
  truth_dv.reserve(design.pairs.size());
  for (const auto& p : design.pairs) truth_dv.push_back(truth.evaluate(p.pair()));

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<AssessmentRecord> out;
  out.reserve(design.pairs.size() * static_cast<std::size_t>(opt.n_observers));

  auto record = [&](std::int64_t pid, std::int64_t obs, int session, double base) {
    const double noise = opt.noise_sigma > 0.0 ? std::exp(opt.noise_sigma * normal(rng)) : 1.0;
    const double dv = base * noise;
    const double gs = dv > 0.0 ? dv_to_gs(dv) : kGrayScaleMin;
    out.push_back(AssessmentRecord::from_grade(pid, obs, session, gs, GsRange::clamp));
  };

  for (int o = 1; o <= opt.n_observers; ++o) {
    for (std::size_t i = 0; i < design.pairs.size(); ++i)
      record(design.pairs[i].pair_id, o, 1, truth_dv[i]);
    for (std::size_t i = 0; i < design.pairs.size(); ++i)
      if (opt.repeat_centers.contains(design.pairs[i].center_id))
        record(design.pairs[i].pair_id, o, 2, truth_dv[i]);
  }
  return out;
}

}  // namespace nscolor
