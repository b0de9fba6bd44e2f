#pragma once

// Agreement statistics between visual and computed colour differences,
// gray-scale conversion and observer variability.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>

#include "nscolor/color.hpp"
#include "nscolor/errors.hpp"

namespace nscolor {

struct StressReport {
  double stress = 0.0;   ///< 0..100, lower is better
  double f_scale = 0.0;  ///< sum(A^2) / sum(AB)
  std::size_t n = 0;
};

/// STRESS of B against A. A is the visual data, B the prediction that F
/// rescales onto A.
inline StressReport stress(std::span<const double> A, std::span<const double> B) {
  if (A.size() != B.size()) throw DomainError("stress: length mismatch");
  if (A.empty()) throw DomainError("stress: empty input");
  double aa = 0.0, ab = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    aa += A[i] * A[i];
    ab += A[i] * B[i];
    bb += B[i] * B[i];
  }
  if (ab == 0.0 || !std::isfinite(ab)) throw DomainError("stress: sum(A*B) is zero");
  const double f = aa / ab;
  double num = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double r = A[i] - f * B[i];
    num += r * r;
  }
  const double s = 100.0 * std::sqrt(num / (f * f * bb));
  return {std::min(s, 100.0), f, A.size()};
}

struct FTestResult {
  double f_value = 0.0;
  double lower_crit = 1.0;
  double upper_crit = 1.0;
  bool significant = false;
};

/// Two-tailed F-test on squared STRESS ratios. Degrees of freedom are n-1
/// per dataset; omitting them selects the (inf, inf) limit where both
/// critical values collapse to 1 and any ratio other than 1 is flagged.
inline FTestResult f_test(double stress1, double stress2, double confidence = 0.95,
                          std::optional<std::size_t> n1 = std::nullopt,
                          std::optional<std::size_t> n2 = std::nullopt) {
  if (!(stress1 > 0.0 && stress2 > 0.0)) throw DomainError("f_test: STRESS must be positive");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw DomainError("f_test: confidence must lie in (0, 1)");
  FTestResult r;
  r.f_value = (stress1 * stress1) / (stress2 * stress2);
  if (n1 && n2) {
    if (*n1 < 2 || *n2 < 2) throw DomainError("f_test: need at least two samples per set");
    const boost::math::fisher_f_distribution<double> dist(static_cast<double>(*n1 - 1),
                                                          static_cast<double>(*n2 - 1));
    const double alpha = 1.0 - confidence;
    r.lower_crit = boost::math::quantile(dist, alpha / 2.0);
    r.upper_crit = boost::math::quantile(dist, 1.0 - alpha / 2.0);
  }
  r.significant = r.f_value < r.lower_crit || r.f_value > r.upper_crit;
  return r;
}

/// Mean colour difference (CIELAB) of each color from the mean color.
inline double mcdm(std::span<const ColorLab> colors) {
  if (colors.size() < 2) throw DomainError("mcdm: need at least two colors");
  ColorLab mean;
  for (const auto& c : colors) {
    mean.L += c.L;
    mean.a += c.a;
    mean.b += c.b;
  }
  const double n = static_cast<double>(colors.size());
  mean = {mean.L / n, mean.a / n, mean.b / n};
  double sum = 0.0;
  for (const auto& c : colors) sum += std::sqrt((c.L - mean.L) * (c.L - mean.L) +
                                                (c.a - mean.a) * (c.a - mean.a) +
                                                (c.b - mean.b) * (c.b - mean.b));
  return sum / n;
}

// Gray-scale grade to visual difference.
inline constexpr double kGrayScaleScale = 0.0534;
inline constexpr double kGrayScaleRate = 0.701;
inline constexpr double kGrayScaleMin = 1.0;
inline constexpr double kGrayScaleMax = 8.0;

enum class GsRange { strict, clamp };

inline double gs_to_dv(double gs, GsRange mode = GsRange::strict) {
  if (!std::isfinite(gs)) throw DomainError("gray-scale grade must be finite");
  if (gs < kGrayScaleMin || gs > kGrayScaleMax) {
    if (mode == GsRange::strict) throw DomainError("gray-scale grade outside [1, 8]");
    gs = std::clamp(gs, kGrayScaleMin, kGrayScaleMax);
  }
  return kGrayScaleScale * std::exp(kGrayScaleRate * gs);
}

inline double dv_to_gs(double dv) {
  if (!(dv > 0.0)) throw DomainError("visual difference must be positive");
  return std::log(dv / kGrayScaleScale) / kGrayScaleRate;
}

struct AssessmentRecord {
  std::int64_t pair_id = 0;
  std::int64_t observer_id = 0;
  int session = 1;
  double gs = 1.0;
  double dv = 0.0;

  static AssessmentRecord from_grade(std::int64_t pair, std::int64_t observer, int session,
                                     double gs, GsRange mode = GsRange::strict) {
    if (mode == GsRange::clamp) gs = std::clamp(gs, kGrayScaleMin, kGrayScaleMax);
    return {pair, observer, session, gs, gs_to_dv(gs, mode)};
  }

  friend bool operator==(const AssessmentRecord&, const AssessmentRecord&) = default;
};

/// Arithmetic mean of every record's dv, per pair, ordered by pair id.
inline std::map<std::int64_t, double> panel_mean_dv(std::span<const AssessmentRecord> records) {
  std::map<std::int64_t, std::pair<double, std::size_t>> acc;
  for (const auto& r : records) {
    auto& [sum, n] = acc[r.pair_id];
    sum += r.dv;
    ++n;
  }
  std::map<std::int64_t, double> out;
  for (const auto& [id, sn] : acc) out[id] = sn.first / static_cast<double>(sn.second);
  return out;
}

/// Grouping labels of a pair, used for the variability breakdowns.
struct PairLabels {
  std::int64_t center_id = 0;
  std::string plane;
  double magnitude = 0.0;
};

struct GroupStress {
  std::string group;       ///< e.g. "center=3", "plane=ab", "center=3/magnitude=8"
  double mean_stress = 0.0;  ///< mean over observers of their STRESS in the group
  std::size_t n_observers = 0;
};

struct VariabilityReport {
  std::map<std::int64_t, double> intra;  ///< observers with repeated pairs only
  std::optional<double> intra_mean;
  std::map<std::int64_t, double> inter;
  double inter_mean = 0.0;
  std::vector<GroupStress> groups;
};

namespace detail {

// observer -> pair -> dv (mean over that observer's sessions)
using ObserverTable = std::map<std::int64_t, std::map<std::int64_t, double>>;

inline ObserverTable observer_means(std::span<const AssessmentRecord> records) {
  std::map<std::int64_t, std::map<std::int64_t, std::pair<double, int>>> acc;
  for (const auto& r : records) {
    auto& [sum, n] = acc[r.observer_id][r.pair_id];
    sum += r.dv;
    ++n;
  }
  ObserverTable out;
  for (const auto& [obs, pairs] : acc)
    for (const auto& [pid, sn] : pairs) out[obs][pid] = sn.first / sn.second;
  return out;
}

template <class Pred>
std::optional<double> inter_stress_subset(const std::map<std::int64_t, double>& mine,
                                          const std::map<std::int64_t, double>& panel,
                                          Pred&& keep) {
  std::vector<double> a, b;
  for (const auto& [pid, dv] : mine) {
    if (!keep(pid)) continue;
    a.push_back(dv);
    b.push_back(panel.at(pid));
  }
  if (a.empty()) return std::nullopt;
  return stress(a, b).stress;
}

}  // namespace detail

/// Intra-observer STRESS compares an observer's first two sessions on the
/// pairs they repeated. Inter-observer STRESS compares each observer
/// against the panel mean. Group breakdowns are reported when labels are
/// supplied for the pair ids.
inline VariabilityReport observer_variability(
    std::span<const AssessmentRecord> records,
    const std::map<std::int64_t, PairLabels>& labels = {}) {
  VariabilityReport rep;
  if (records.empty()) return rep;

  // Intra-observer.
  std::map<std::int64_t, std::map<std::int64_t, std::map<int, std::vector<double>>>> sessions;
  for (const auto& r : records) sessions[r.observer_id][r.pair_id][r.session].push_back(r.dv);
  double intra_sum = 0.0;
  for (const auto& [obs, pairs] : sessions) {
    std::vector<double> first, second;
    for (const auto& [pid, by_session] : pairs) {
      if (by_session.size() < 2) continue;
      auto it = by_session.begin();
      first.push_back(it->second.front());
      second.push_back(std::next(it)->second.front());
    }
    if (first.empty()) continue;
    rep.intra[obs] = stress(first, second).stress;
    intra_sum += rep.intra[obs];
  }
  if (!rep.intra.empty()) rep.intra_mean = intra_sum / static_cast<double>(rep.intra.size());

  // Inter-observer.
  const auto table = detail::observer_means(records);
  std::map<std::int64_t, std::pair<double, int>> acc;
  for (const auto& [obs, pairs] : table)
    for (const auto& [pid, dv] : pairs) {
      acc[pid].first += dv;
      acc[pid].second += 1;
    }
  std::map<std::int64_t, double> panel;
  for (const auto& [pid, sn] : acc) panel[pid] = sn.first / sn.second;

  double inter_sum = 0.0;
  for (const auto& [obs, mine] : table) {
    rep.inter[obs] = *detail::inter_stress_subset(mine, panel, [](std::int64_t) { return true; });
    inter_sum += rep.inter[obs];
  }
  rep.inter_mean = inter_sum / static_cast<double>(rep.inter.size());

  if (labels.empty()) return rep;

  // Group key sets: marginals by center, plane, magnitude, and center crossed
  // with plane and with magnitude.
  auto fmt_mag = [](double m) {
    std::string s = std::to_string(m);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  std::map<std::string, std::vector<std::int64_t>> members;
  for (const auto& [pid, _] : panel) {
    auto it = labels.find(pid);
    if (it == labels.end()) continue;
    const auto& lab = it->second;
    const std::string c = "center=" + std::to_string(lab.center_id);
    const std::string p = "plane=" + lab.plane;
    const std::string m = "magnitude=" + fmt_mag(lab.magnitude);
    for (const auto& key : {c, p, m, c + "/" + p, c + "/" + m}) members[key].push_back(pid);
  }
  for (const auto& [key, pids] : members) {
    const std::vector<std::int64_t>& ids = pids;
    auto keep = [&ids](std::int64_t pid) { return std::binary_search(ids.begin(), ids.end(), pid); };
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [obs, mine] : table) {
      if (auto s = detail::inter_stress_subset(mine, panel, keep)) {
        sum += *s;
        ++n;
      }
    }
    if (n > 0) rep.groups.push_back({key, sum / static_cast<double>(n), n});
  }
  return rep;
}

}  // namespace nscolor
