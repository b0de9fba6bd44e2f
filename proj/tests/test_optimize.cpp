#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nscolor/dataset.hpp"
#include "nscolor/optimize.hpp"
#include "nscolor/simplex.hpp"

using namespace nscolor;

namespace {

FitData design_data(const std::function<double(const ColorPair&)>& truth) {
  const auto design = canonical_design();
  FitData d;
  for (const auto& p : design.pairs) {
    d.pairs.push_back(p.pair());
    d.dv.push_back(truth(d.pairs.back()));
    d.magnitude.push_back(p.magnitude);
  }
  return d;
}

double ns_truth(const ColorPair& p) { return delta_e_ns(p.reference, p.sample).de_ns; }

}  // namespace

TEST(Simplex, Parabola) {
  auto f = [](const std::vector<double>& x) { return (x[0] - 3.0) * (x[0] - 3.0); };
  const auto r = nelder_mead(f, {0.0});
  EXPECT_NEAR(r.x[0], 3.0, 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(Simplex, Rosenbrock) {
  auto f = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  SimplexOptions opt;
  opt.tolerance = 1e-10;
  const auto r = nelder_mead(f, {-1.2, 1.0}, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(Simplex, Deterministic) {
  auto f = [](const std::vector<double>& x) {
    return std::sin(x[0]) + 0.1 * x[0] * x[0] + std::pow(x[1] - 0.3, 2);
  };
  const auto a = nelder_mead(f, {1.0, 1.0});
  const auto b = nelder_mead(f, {1.0, 1.0});
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Simplex, NonFiniteStart) {
  auto f = [](const std::vector<double>&) { return std::nan(""); };
  EXPECT_THROW(nelder_mead(f, {0.0}), OptimizationError);
}

TEST(Parameter, TransformsRoundTrip) {
  const Parameter log_p{"k", 1.0, Transform::log};
  EXPECT_NEAR(log_p.to_external(log_p.to_internal(0.37)), 0.37, 1e-12);
  const Parameter lg{"c", 1.0, Transform::logistic, 0.0, 2.0};
  EXPECT_NEAR(lg.to_external(lg.to_internal(1.7)), 1.7, 1e-12);
  EXPECT_GT(lg.to_external(50.0), 0.0);
  EXPECT_LT(lg.to_external(50.0), 2.0 + 1e-12);
}

TEST(ApplyFactors, MatchesFreshEvaluation) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-20, 20), k(0.4, 2.5);
  for (int i = 0; i < 200; ++i) {
    const ColorLab r{50 + u(rng), u(rng), u(rng)};
    const ColorLab s{r.L + u(rng) / 5, r.a + u(rng) / 5, r.b + u(rng) / 5};
    const ParametricFactors f{k(rng), k(rng), k(rng)};
    const auto p = pair_differences(r, s);
    for (FormulaId id : {FormulaId::cielab, FormulaId::cie94, FormulaId::ciede2000}) {
      const double direct = parametric_delta_e(id, p, f);
      const double via = apply_factors(formula_components(id, p), f).total();
      ASSERT_NEAR(direct, via, 1e-9 * std::max(1.0, direct));
    }
  }
}

TEST(FitParametric, RecoversKl) {
  const auto data = design_data([](const ColorPair& p) {
    return parametric_delta_e(FormulaId::ciede2000, p, {0.6, 1.0, 1.0});
  });
  const auto r = fit_parametric_factors(data, FormulaId::ciede2000, FitTarget::kL_only);
  EXPECT_NEAR(r["kL"], 0.6, 1e-4);
  EXPECT_LT(r.stress_after, 1e-3);
  EXPECT_LE(r.stress_after, r.stress_before);
}

TEST(FitParametric, IdentityTruthGivesUnitFactors) {
  const auto data = design_data(
      [](const ColorPair& p) { return delta_e_ciede2000(p).de00; });
  const auto r = fit_parametric_factors(data, FormulaId::ciede2000, FitTarget::kL_kC);
  EXPECT_NEAR(r["kL"], 1.0, 1e-4);
  EXPECT_NEAR(r["kC"], 1.0, 1e-4);
}

TEST(FitParametric, ScaleInvariant) {
  auto data = design_data(ns_truth);
  const auto a = fit_parametric_factors(data, FormulaId::ciede2000, FitTarget::kL_only);
  for (auto& v : data.dv) v *= 3.0;
  const auto b = fit_parametric_factors(data, FormulaId::ciede2000, FitTarget::kL_only);
  EXPECT_NEAR(a["kL"], b["kL"], 1e-6);
}

TEST(FitParametric, ByMagnitudeOnNsTruth) {
  const auto data = design_data(ns_truth);
  const auto fits = fit_parametric_by_magnitude(data, FormulaId::ciede2000, FitTarget::kL_only);
  ASSERT_EQ(fits.size(), 4u);
  double prev = 0.0;
  for (const auto& [m, r] : fits) {
    EXPECT_LT(r["kL"], 1.0) << "magnitude " << m;
    EXPECT_GT(r["kL"], prev) << "magnitude " << m;
    prev = r["kL"];
  }
}

TEST(FitParametric, TooFewPairs) {
  auto data = design_data(ns_truth).subset(1.0);
  data.pairs.resize(5);
  data.dv.resize(5);
  data.magnitude.resize(5);
  EXPECT_THROW(fit_parametric_factors(data, FormulaId::ciede2000, FitTarget::kL_only), FitError);
  auto zero = design_data(ns_truth);
  for (auto& v : zero.dv) v = 0.0;
  EXPECT_THROW(fit_parametric_factors(zero, FormulaId::ciede2000, FitTarget::kL_only), FitError);
}

TEST(FitDlLine, RecoversNoiselessLine) {
  const auto data = design_data(ns_truth);
  const auto r = fit_dl_line(data, FormulaId::ciede2000);
  EXPECT_NEAR(r["a"], 0.08, 0.005);
  EXPECT_NEAR(r["b"], 0.27, 0.005);
  EXPECT_LT(r.stress_after, 0.5);
}

TEST(FitDlLine, ConstantFactor) {
  const auto data = design_data([](const ColorPair& p) {
    return magnitude_corrected(formula_components(FormulaId::ciede2000, p), 0.0, 0.5);
  });
  const auto r = fit_dl_line(data, FormulaId::ciede2000);
  EXPECT_NEAR(r["a"], 0.0, 0.005);
  EXPECT_NEAR(r["b"], 0.5, 0.01);
}

TEST(FitDlLine, NoisyPanel) {
  const auto design = canonical_design();
  SynthesisOptions opt;
  opt.noise_sigma = 0.1;
  opt.seed = 7;
  const auto recs = synthesize_assessments(design, GroundTruth{}, opt);
  const auto data = make_fit_data(design.pairs, recs);
  const auto r = fit_dl_line(data, FormulaId::ciede2000);
  EXPECT_NEAR(r["a"], 0.08, 0.02);
  EXPECT_NEAR(r["b"], 0.27, 0.02);
  EXPECT_LT(r.stress_after, 12.0);
}

TEST(FitDlLine, SingleMagnitudeIsUnidentifiable) {
  const auto data = design_data(ns_truth).subset(4.0);
  EXPECT_THROW(fit_dl_line(data, FormulaId::ciede2000), FitError);
}

TEST(FitPower, RecoversExponent) {
  const auto data = design_data(
      [](const ColorPair& p) { return std::pow(delta_e_ciede2000(p).de00, 0.70); });
  const auto r = fit_power(data, FormulaId::ciede2000, FitTarget::power_c);
  EXPECT_NEAR(r["c"], 0.70, 0.005);
}

TEST(FitPower, ProportionalDataGivesUnitExponent) {
  const auto data = design_data(
      [](const ColorPair& p) { return 2.0 * delta_e_ciede2000(p).de00; });
  const auto r = fit_power(data, FormulaId::ciede2000, FitTarget::power_c);
  EXPECT_NEAR(r["c"], 1.0, 1e-3);
}

TEST(FitPower, MagnitudePowerWithGivenLine) {
  const auto data = design_data([](const ColorPair& p) {
    return corrected_delta_e(CorrectionKind::magnitude_power, FormulaId::ciede2000, p,
                             registry(FormulaId::ciede2000));
  });
  PowerOptions opt;
  opt.line = {{0.08, 0.27}};
  const auto r = fit_power(data, FormulaId::ciede2000, FitTarget::magnitude_power_d, opt);
  EXPECT_NEAR(r["d"], 0.91, 0.01);
  EXPECT_DOUBLE_EQ(r["a"], 0.08);
  EXPECT_DOUBLE_EQ(r["b"], 0.27);
}

TEST(FitPower, RejectsCamBase) {
  const auto data = design_data(ns_truth);
  EXPECT_THROW(fit_power(data, FormulaId::cam16_ucs, FitTarget::power_c), NotImplementedError);
}
