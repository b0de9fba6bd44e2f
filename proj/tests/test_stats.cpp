#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nscolor/dataset.hpp"
#include "nscolor/stats.hpp"
#include "oracles/f_quantile.hpp"

using namespace nscolor;

TEST(Stress, EqualSetsAreZero) {
  const std::vector<double> a{1.0, 2.5, 4.0};
  const auto r = stress(a, a);
  EXPECT_NEAR(r.stress, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.f_scale, 1.0);
  EXPECT_EQ(r.n, 3u);
}

TEST(Stress, ProportionalSetsAreZero) {
  const std::vector<double> b{1.0, 2.5, 4.0}, a{2.0, 5.0, 8.0};
  const auto r = stress(a, b);
  EXPECT_NEAR(r.stress, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.f_scale, 2.0);
}

TEST(Stress, HandExample) {
  // F = (1 + 4) / (1 + 2) = 5/3; residuals (1 - 5/3, 2 - 5/3) = (-2/3, 1/3)
  // STRESS = 100 sqrt((4/9 + 1/9) / (2 * 25/9)) = 100 sqrt(0.1) = 31.6228
  const std::vector<double> a{1.0, 2.0}, b{1.0, 1.0};
  const auto r = stress(a, b);
  EXPECT_NEAR(r.f_scale, 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.stress, 31.62, 0.01);
}

TEST(Stress, Errors) {
  const std::vector<double> a{1.0, 2.0}, b{1.0};
  EXPECT_THROW(stress(a, b), DomainError);
  EXPECT_THROW(stress(std::vector<double>{}, std::vector<double>{}), DomainError);
  EXPECT_THROW(stress(a, std::vector<double>{0.0, 0.0}), DomainError);
}

TEST(Stress, ScaleInvarianceProperty) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 10.0), k(0.01, 100.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> a(20), b(20);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    const double base = stress(a, b).stress;
    ASSERT_GE(base, 0.0);
    ASSERT_LE(base, 100.0);
    const double s = k(rng);
    std::vector<double> as(a), bs(b);
    for (auto& x : as) x *= s;
    for (auto& x : bs) x *= s;
    ASSERT_NEAR(stress(as, b).stress, base, 1e-9);
    ASSERT_NEAR(stress(a, bs).stress, base, 1e-9);
  }
}

TEST(Stress, ZeroOnlyWhenProportional) {
  std::vector<double> b{1, 2, 3, 4}, a{2, 4, 6, 8};
  EXPECT_NEAR(stress(a, b).stress, 0.0, 1e-9);
  a[2] += 1e-3;
  EXPECT_GT(stress(a, b).stress, 1e-9);
}

TEST(FTest, EqualStress) {
  const auto r = f_test(25, 25);
  EXPECT_DOUBLE_EQ(r.f_value, 1.0);
  EXPECT_FALSE(r.significant);
}

TEST(FTest, Ratio) {
  EXPECT_DOUBLE_EQ(f_test(30, 20).f_value, 2.25);
  EXPECT_TRUE(f_test(30, 20).significant);
  EXPECT_THROW(f_test(0, 20), DomainError);
}

TEST(FTest, CriticalValuesMatchQuadratureOracle) {
  const auto r = f_test(30, 20, 0.95, 1012, 1012);
  const double lo = oracle::f_quantile(0.025, 1011, 1011);
  const double hi = oracle::f_quantile(0.975, 1011, 1011);
  EXPECT_NEAR(r.lower_crit, lo, 1e-6);
  EXPECT_NEAR(r.upper_crit, hi, 1e-6);
  // Two-tailed 95% at df = 1011 sits about 0.12-0.13 from 1 on each side.
  EXPECT_LT(r.lower_crit, 1.0);
  EXPECT_GT(r.upper_crit, 1.0);
  EXPECT_NEAR(r.lower_crit, 0.8840, 1e-3);
  EXPECT_NEAR(r.upper_crit, 1.1313, 1e-3);
  EXPECT_TRUE(r.significant);
}

TEST(FTest, CriticalValuesApproachOne) {
  double prev_gap = 2.0;
  for (std::size_t n : {50u, 500u, 5000u, 50000u}) {
    const auto r = f_test(20, 20, 0.95, n, n);
    const double gap = r.upper_crit - r.lower_crit;
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 0.04);
}

TEST(Mcdm, Basics) {
  const std::vector<ColorLab> same(5, ColorLab{50, 1, 2});
  EXPECT_NEAR(mcdm(same), 0.0, 1e-12);
  const std::vector<ColorLab> two{{50, 0, 0}, {50, 3, 4}};
  EXPECT_NEAR(mcdm(two), 2.5, 1e-12);
  EXPECT_THROW(mcdm(std::vector<ColorLab>{{50, 0, 0}}), DomainError);
}

TEST(Mcdm, MatchesBruteForceAndPermutation) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-50, 50);
  std::vector<ColorLab> c(5);
  for (auto& x : c) x = {50 + u(rng) / 5, u(rng), u(rng)};
  double mL = 0, ma = 0, mb = 0;
  for (const auto& x : c) mL += x.L / 5, ma += x.a / 5, mb += x.b / 5;
  double brute = 0;
  for (const auto& x : c)
    brute += std::sqrt((x.L - mL) * (x.L - mL) + (x.a - ma) * (x.a - ma) + (x.b - mb) * (x.b - mb)) / 5;
  EXPECT_NEAR(mcdm(c), brute, 1e-12);
  std::reverse(c.begin(), c.end());
  EXPECT_NEAR(mcdm(c), brute, 1e-12);
}

TEST(GrayScale, KnownValues) {
  EXPECT_NEAR(gs_to_dv(8), 14.56, 0.01);
  EXPECT_NEAR(gs_to_dv(1), 0.1076, 0.0005);
  EXPECT_NEAR(dv_to_gs(gs_to_dv(4.18)), 4.18, 1e-12);
}

TEST(GrayScale, RangeHandling) {
  EXPECT_THROW(gs_to_dv(0.5), DomainError);
  EXPECT_THROW(gs_to_dv(8.5), DomainError);
  EXPECT_DOUBLE_EQ(gs_to_dv(9.0, GsRange::clamp), gs_to_dv(8.0));
  EXPECT_THROW(dv_to_gs(0.0), DomainError);
}

TEST(GrayScale, MonotoneAndInvertible) {
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double gs = 1.0 + 7.0 * i / 1000.0;
    const double dv = gs_to_dv(gs);
    ASSERT_GT(dv, prev);
    ASSERT_NEAR(dv_to_gs(dv), gs, 1e-12);
    prev = dv;
  }
}

namespace {

AssessmentRecord rec(std::int64_t pair, std::int64_t obs, double dv, int session = 1) {
  return AssessmentRecord::from_grade(pair, obs, session, dv_to_gs(dv));
}

}  // namespace

TEST(Variability, EveryoneAtPanelMean) {
  std::vector<AssessmentRecord> r;
  for (int o = 1; o <= 3; ++o)
    for (int p = 1; p <= 4; ++p) r.push_back(rec(p, o, 0.5 * p));
  const auto rep = observer_variability(r);
  for (const auto& [obs, s] : rep.inter) EXPECT_NEAR(s, 0.0, 1e-9);
  EXPECT_TRUE(rep.intra.empty());
  EXPECT_FALSE(rep.intra_mean.has_value());
}

TEST(Variability, HandExampleThroughPanel) {
  // Observer 1 reports (1, 2); observers 2 and 3 report (1, 0.5) -> panel (1, 1).
  std::vector<AssessmentRecord> r{rec(1, 1, 1.0), rec(2, 1, 2.0), rec(1, 2, 1.0),
                                  rec(2, 2, 0.5), rec(1, 3, 1.0), rec(2, 3, 0.5)};
  const auto rep = observer_variability(r);
  EXPECT_NEAR(rep.inter.at(1), 31.62, 0.01);
}

TEST(Variability, IntraUsesRepeatedSessions) {
  std::vector<AssessmentRecord> r{rec(1, 1, 1.0, 1), rec(2, 1, 2.0, 1), rec(1, 1, 2.0, 2),
                                  rec(2, 1, 4.0, 2), rec(1, 2, 1.0, 1), rec(2, 2, 2.0, 1)};
  const auto rep = observer_variability(r);
  ASSERT_EQ(rep.intra.size(), 1u);
  EXPECT_NEAR(rep.intra.at(1), 0.0, 1e-6);
  EXPECT_FALSE(rep.intra.contains(2));
}

TEST(Variability, SyntheticPanelInPlausibleRange) {
  const auto design = canonical_design();
  SynthesisOptions opt;
  opt.noise_sigma = 0.25;
  opt.n_observers = 19;
  opt.seed = 2018;
  const auto records = synthesize_assessments(design, GroundTruth{}, opt);
  const auto rep = observer_variability(records, pair_labels(design.pairs));
  EXPECT_GT(rep.inter_mean, 20.0);
  EXPECT_LT(rep.inter_mean, 35.0);
  bool saw_plane = false;
  for (const auto& g : rep.groups) saw_plane |= g.group == "plane=ab";
  EXPECT_TRUE(saw_plane);
}
