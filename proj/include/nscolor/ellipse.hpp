#pragma once

// Discrimination ellipsoid fitting by STRESS minimization and the a*b*-plane
// section of the fitted ellipsoid.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nscolor/color.hpp"
#include "nscolor/errors.hpp"
#include "nscolor/simplex.hpp"
#include "nscolor/stats.hpp"

namespace nscolor {

/// Component differences in ellipsoid order (a*, b*, L*).
struct LabDelta {
  double da = 0.0;
  double db = 0.0;
  double dL = 0.0;
};

inline LabDelta lab_delta(const ColorPair& p) { return {p.da, p.db, p.dL}; }

/// dE^2 = k1 da^2 + k2 da db + k3 db^2 + k4 da dL + k5 db dL + k6 dL^2
struct EllipsoidFit {
  std::array<double, 6> k{1.0, 0.0, 1.0, 0.0, 0.0, 1.0};
  double fit_stress = 0.0;
  ColorLab center;
  std::size_t n_pairs = 0;

  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d m;
    m << k[0], k[1] / 2, k[3] / 2,  //
        k[1] / 2, k[2], k[4] / 2,   //
        k[3] / 2, k[4] / 2, k[5];
    return m;
  }

  double predict(const LabDelta& d) const {
    const double q = k[0] * d.da * d.da + k[1] * d.da * d.db + k[2] * d.db * d.db +
                     k[3] * d.da * d.dL + k[4] * d.db * d.dL + k[5] * d.dL * d.dL;
    return q > 0.0 ? std::sqrt(q) : 0.0;
  }

  static EllipsoidFit from_matrix(const Eigen::Matrix3d& m) {
    EllipsoidFit f;
    f.k = {m(0, 0), 2 * m(0, 1), m(1, 1), 2 * m(0, 2), 2 * m(1, 2), m(2, 2)};
    return f;
  }
};

struct PlaneEllipse {
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double theta_deg = 0.0;  ///< major axis from +a*, [0, 180)
};

inline bool is_positive_definite(const EllipsoidFit& fit) {
  Eigen::LLT<Eigen::Matrix3d> llt(fit.matrix());
  return llt.info() == Eigen::Success;
}

/// Unit-difference contour of the dL* = 0 section.
inline PlaneEllipse plane_ellipse(const EllipsoidFit& fit) {
  const double k1 = fit.k[0], k2 = fit.k[1], k3 = fit.k[2];
  const double mean = 0.5 * (k1 + k3);
  const double rad = std::hypot(0.5 * (k1 - k3), 0.5 * k2);
  const double lo = mean - rad, hi = mean + rad;
  if (!(lo > 0.0)) throw DomainError("a*b* section is not positive definite");

  PlaneEllipse e{1.0 / std::sqrt(lo), 1.0 / std::sqrt(hi), 0.0};
  if (rad > 1e-12 * std::abs(mean)) {
    // 0.5*atan2 gives the direction of the larger eigenvalue; the major axis
    // is perpendicular to it.
    double theta = 0.5 * std::atan2(k2, k1 - k3) * 180.0 / std::numbers::pi + 90.0;
    theta = std::fmod(theta, 180.0);
    if (theta < 0.0) theta += 180.0;
    e.theta_deg = theta;
  }
  return e;
}

/// Rescales so predictions are divided by `f`; semi-axes grow by `f`.
inline EllipsoidFit scale_fit(EllipsoidFit fit, double f) {
  if (!(f > 0.0)) throw DomainError("scale factor must be positive");
  for (auto& k : fit.k) k /= f * f;
  return fit;
}

namespace detail {

inline Eigen::Matrix<double, 6, 1> monomials(const LabDelta& d) {
  Eigen::Matrix<double, 6, 1> m;
  m << d.da * d.da, d.da * d.db, d.db * d.db, d.da * d.dL, d.db * d.dL, d.dL * d.dL;
  return m;
}

// Lower-triangular factor with L(0,0) fixed at 1; overall scale is restored
// from the STRESS scaling factor.
inline Eigen::Matrix3d factor_to_matrix(const std::vector<double>& p) {
  Eigen::Matrix3d l = Eigen::Matrix3d::Zero();
  l(0, 0) = 1.0;
  l(1, 0) = p[0];
  l(1, 1) = p[1];
  l(2, 0) = p[2];
  l(2, 1) = p[3];
  l(2, 2) = p[4];
  return l * l.transpose();
}

inline std::vector<double> matrix_to_factor(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d l = Eigen::LLT<Eigen::Matrix3d>(m / m(0, 0)).matrixL();
  return {l(1, 0), l(1, 1), l(2, 0), l(2, 1), l(2, 2)};
}

}  // namespace detail

/// Condition number of the normal matrix of the six quadratic monomials.
/// Infinite when the differences do not determine all six coefficients.
inline double design_condition_number(std::span<const LabDelta> diffs) {
  Eigen::Matrix<double, 6, 6> n = Eigen::Matrix<double, 6, 6>::Zero();
  for (const auto& d : diffs) {
    const auto m = detail::monomials(d);
    n += m * m.transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(n);
  const auto& s = svd.singularValues();
  if (!(s(5) > s(0) * 1e-13)) return std::numeric_limits<double>::infinity();
  return s(0) / s(5);
}

inline double ellipsoid_stress(const EllipsoidFit& fit, std::span<const LabDelta> diffs,
                               std::span<const double> dv) {
  std::vector<double> pred(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) pred[i] = fit.predict(diffs[i]);
  return stress(dv, pred).stress;
}

/// Fits k1..k6 to visual differences by minimizing STRESS over a
/// Cholesky parameterization, so the result is always positive definite.
/// The returned coefficients are scaled onto the visual data (F = 1).
inline EllipsoidFit fit_ellipsoid(std::span<const LabDelta> diffs, std::span<const double> dv,
                                  const ColorLab& center = {}, SimplexOptions opt = {}) {
  if (diffs.size() != dv.size()) throw FitError("fit_ellipsoid: length mismatch");
  if (diffs.size() < 6) throw FitError("fit_ellipsoid: need at least 6 pairs");
  for (double v : dv)
    if (!(v > 0.0)) throw FitError("fit_ellipsoid: visual differences must be positive");
  if (!std::isfinite(design_condition_number(diffs)))
    throw FitError("fit_ellipsoid: degenerate geometry, differences do not span the ellipsoid");

  std::vector<double> pred(diffs.size());
  auto evaluate = [&](const Eigen::Matrix3d& m) {
    const EllipsoidFit f = EllipsoidFit::from_matrix(m);
    for (std::size_t i = 0; i < diffs.size(); ++i) pred[i] = f.predict(diffs[i]);
    return stress(dv, pred);
  };
  auto objective = [&](const std::vector<double>& p) {
    try {
      return evaluate(detail::factor_to_matrix(p)).stress;
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Start from the isotropic form, or from the linear least-squares
  // quadric on dv^2 when that is positive definite and fits better.
  std::vector<double> start = detail::matrix_to_factor(Eigen::Matrix3d::Identity());
  double start_stress = objective(start);
  {
    Eigen::MatrixXd a(diffs.size(), 6);
    Eigen::VectorXd y(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      a.row(static_cast<Eigen::Index>(i)) = detail::monomials(diffs[i]).transpose();
      y(static_cast<Eigen::Index>(i)) = dv[i] * dv[i];
    }
    const Eigen::VectorXd k = a.colPivHouseholderQr().solve(y);
    EllipsoidFit ls;
    for (int i = 0; i < 6; ++i) ls.k[static_cast<std::size_t>(i)] = k(i);
    if (is_positive_definite(ls)) {
      auto p = detail::matrix_to_factor(ls.matrix());
      const double s = objective(p);
      if (s < start_stress) {
        start = std::move(p);
        start_stress = s;
      }
    }
  }

  const SimplexResult r = nelder_mead(objective, start, opt);
  const Eigen::Matrix3d m = detail::factor_to_matrix(r.x);
  const StressReport rep = evaluate(m);

  EllipsoidFit out = EllipsoidFit::from_matrix(m * (rep.f_scale * rep.f_scale));
  out.fit_stress = rep.stress;
  out.center = center;
  out.n_pairs = diffs.size();
  return out;
}

}  // namespace nscolor
