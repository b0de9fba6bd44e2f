#pragma once

// Deterministic Nelder-Mead simplex minimizer.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "nscolor/errors.hpp"

namespace nscolor {

struct SimplexOptions {
  double tolerance = 1e-8;       ///< stop when the simplex diameter drops below this
  std::size_t max_evaluations = 0;  ///< 0 selects 2000 * dimension
  double initial_step = 0.1;
  int restarts = 2;  ///< re-seed the simplex around the best point after convergence
};

struct SimplexResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

inline double finite_or_inf(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Minimizes `f` starting from `x0`. Non-finite objective values are
/// treated as +inf. Identical inputs give bit-identical results.
template <class Objective>
SimplexResult nelder_mead(Objective&& f, std::vector<double> x0, const SimplexOptions& opt = {}) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw OptimizationError("nelder_mead: empty parameter vector");
  const std::size_t max_evals = opt.max_evaluations ? opt.max_evaluations : 2000 * dim;

  SimplexResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return detail::finite_or_inf(f(x));
  };

  const double f0 = eval(x0);
  if (!std::isfinite(f0)) throw OptimizationError("objective is not finite at the initial point");
  res.x = x0;
  res.value = f0;

  std::vector<std::vector<double>> pts(dim + 1);
  std::vector<double> vals(dim + 1);
  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  for (int round = 0; round <= opt.restarts; ++round) {
    const double start_value = res.value;
    pts[0] = res.x;
    vals[0] = res.value;
    for (std::size_t i = 0; i < dim; ++i) {
      pts[i + 1] = res.x;
      const double h = res.x[i] != 0.0 ? opt.initial_step * std::abs(res.x[i]) : opt.initial_step;
      pts[i + 1][i] += std::max(h, 1e-4);
      vals[i + 1] = eval(pts[i + 1]);
    }
    if (std::all_of(vals.begin(), vals.end(), [](double v) { return !std::isfinite(v); }))
      throw OptimizationError("objective is not finite anywhere on the initial simplex");

    res.converged = false;
    while (res.evaluations < max_evals) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
      const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= dim; ++i) {
        double d = 0.0;
        for (std::size_t k = 0; k < dim; ++k) d = std::max(d, std::abs(pts[i][k] - pts[best][k]));
        diameter = std::max(diameter, d);
      }
      if (diameter < opt.tolerance) {
        res.converged = true;
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k];
      }
      for (auto& c : centroid) c /= static_cast<double>(dim);

      for (std::size_t k = 0; k < dim; ++k) trial[k] = centroid[k] + (centroid[k] - pts[worst][k]);
      const double fr = eval(trial);

      if (fr < vals[best]) {
        for (std::size_t k = 0; k < dim; ++k)
          trial2[k] = centroid[k] + 2.0 * (centroid[k] - pts[worst][k]);
        const double fe = eval(trial2);
        if (fe < fr) {
          pts[worst] = trial2;
          vals[worst] = fe;
        } else {
          pts[worst] = trial;
          vals[worst] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[worst] = trial;
        vals[worst] = fr;
        continue;
      }

      // Contraction: outside if the reflection beat the worst point, inside otherwise.
      const bool outside = fr < vals[worst];
      for (std::size_t k = 0; k < dim; ++k) {
        const double toward = outside ? trial[k] : pts[worst][k];
        trial2[k] = centroid[k] + 0.5 * (toward - centroid[k]);
      }
      const double fc = eval(trial2);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = trial2;
        vals[worst] = fc;
        continue;
      }

      // Shrink toward the best vertex.
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == best) continue;
        for (std::size_t k = 0; k < dim; ++k)
          pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
        vals[i] = eval(pts[i]);
      }
    }

    const auto it = std::min_element(vals.begin(), vals.end());
    if (*it <= res.value) {
      res.value = *it;
      res.x = pts[static_cast<std::size_t>(it - vals.begin())];
    }
    if (!res.converged || res.evaluations >= max_evals) break;
    if (start_value - res.value <= opt.tolerance * (std::abs(start_value) + opt.tolerance)) break;
  }
  return res;
}

}  // namespace nscolor
