#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nscolor/color.hpp"
#include "nscolor/formulas.hpp"
#include "oracles/ciede2000_reference.hpp"

using namespace nscolor;

namespace {

ColorLab lab_of(double X, double Y, double Z) { return xyz_to_lab({X, Y, Z}, kWorkedExampleWhite); }

struct WorkedExample {
  ColorLab s1 = lab_of(8.90, 9.53, 23.10);
  ColorLab p1 = lab_of(9.21, 9.72, 23.38);
  ColorLab s2 = lab_of(58.26, 64.26, 24.83);
  ColorLab p2 = lab_of(59.10, 64.76, 25.50);
};

struct SharmaRow {
  ColorLab c1, c2;
  double de00;
};

// Published supplementary test data for CIEDE2000 (4-decimal values).
const std::vector<SharmaRow> kSharma = {
    {{50.0000, 2.6772, -79.7751}, {50.0000, 0.0000, -82.7485}, 2.0425},
    {{50.0000, 3.1571, -77.2803}, {50.0000, 0.0000, -82.7485}, 2.8615},
    {{50.0000, 2.8361, -74.0200}, {50.0000, 0.0000, -82.7485}, 3.4412},
    {{50.0000, -1.3802, -84.2814}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, -1.1848, -84.8006}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, -0.9009, -85.5211}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, 0.0000, 0.0000}, {50.0000, -1.0000, 2.0000}, 2.3669},
    {{50.0000, -1.0000, 2.0000}, {50.0000, 0.0000, 0.0000}, 2.3669},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0009}, 7.1792},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0010}, 7.1792},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0011}, 7.2195},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0012}, 7.2195},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0009, -2.4900}, 4.8045},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0010, -2.4900}, 4.8045},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0011, -2.4900}, 4.7461},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 0.0000, -2.5000}, 4.3065},
    {{50.0000, 2.5000, 0.0000}, {73.0000, 25.0000, -18.0000}, 27.1492},
    {{50.0000, 2.5000, 0.0000}, {61.0000, -5.0000, 29.0000}, 22.8977},
    {{50.0000, 2.5000, 0.0000}, {56.0000, -27.0000, -3.0000}, 31.9030},
    {{50.0000, 2.5000, 0.0000}, {58.0000, 24.0000, 15.0000}, 19.4535},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.1736, 0.5854}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2972, 0.0000}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 1.8634, 0.5757}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2592, 0.3350}, 1.0000},
    {{60.2574, -34.0099, 36.2677}, {60.4626, -34.1751, 39.4387}, 1.2644},
    {{63.0109, -31.0961, -5.8663}, {62.8187, -29.7946, -4.0864}, 1.2630},
    {{61.2901, 3.7196, -5.3901}, {61.4292, 2.2480, -4.9620}, 1.8731},
    {{35.0831, -44.1164, 3.7933}, {35.0232, -40.0716, 1.5901}, 1.8645},
    {{22.7233, 20.0904, -46.6940}, {23.0331, 14.9730, -42.5619}, 2.0373},
    {{36.4612, 47.8580, 18.3852}, {36.2715, 50.5065, 21.2231}, 1.4146},
    {{90.8027, -2.0831, 1.4410}, {91.1528, -1.6435, 0.0447}, 1.4441},
    {{90.9257, -0.5406, -0.9208}, {88.6381, -0.8985, -0.7239}, 1.5381},
    {{6.7747, -0.2908, -2.4247}, {5.8714, -0.0985, -2.2286}, 0.6377},
    {{2.0776, 0.0795, -1.1350}, {0.9033, -0.0636, -0.5514}, 0.9082},
};

}  // namespace

TEST(Cielab, KnownValues) {
  const ColorLab standard{41.49, 0.04, 1.71};
  EXPECT_EQ(delta_e_cielab(pair_differences(standard, standard)), 0.0);
  EXPECT_NEAR(delta_e_cielab(pair_differences(standard, {56.00, -0.50, 1.17})), 14.53, 0.02);
  EXPECT_NEAR(delta_e_cielab(pair_differences(standard, {43.07, 0.09, 1.76})), 1.58, 0.02);
}

TEST(Cie94, IdenticalAndNeutral) {
  const ColorLab c{50, 20, 30};
  EXPECT_EQ(delta_e_cie94(pair_differences(c, c)), 0.0);
  const auto neutral = pair_differences({40, 0, 0}, {47, 0, 0});
  EXPECT_DOUBLE_EQ(delta_e_cie94(neutral), delta_e_cielab(neutral));
}

// Step-by-step evaluation of pair 1 (S1 reference, P1 sample):
//   S1 = (36.985327, -1.916223, -29.532056), P1 = (37.335136, -0.824559, -29.415405)
//   dL = 0.349809, C1 = 29.594159, C2 = 29.426960, dC = -0.167199
//   dE*ab = 1.104198, dH^2 = dE^2 - dL^2 - dC^2 = 1.064366
//   SC = 1 + 0.045*C1 = 2.331737, SH = 1 + 0.015*C1 = 1.443912
//   dE94 = sqrt(0.349809^2 + (dC/SC)^2 + dH^2/SH^2) = 0.832005
TEST(Cie94, WorkedExamplePairOneRegression) {
  const WorkedExample ap;
  EXPECT_NEAR(delta_e_cie94(pair_differences(ap.s1, ap.p1)), 0.832005, 1e-6);
}

TEST(Cie94, RejectsNonPositiveFactors) {
  const auto p = pair_differences({50, 1, 1}, {51, 1, 1});
  EXPECT_THROW(delta_e_cie94(p, 0.0, 1, 1), DomainError);
  EXPECT_THROW(delta_e_cie94(p, 1, -1, 1), DomainError);
}

TEST(Cmc, IdenticalIsZero) {
  const ColorLab c{50, 20, 30};
  EXPECT_EQ(delta_e_cmc(pair_differences(c, c)), 0.0);
}

TEST(Cmc, LightnessWeightHalvesPureLightnessPair) {
  const auto p = pair_differences({50, 10, 10}, {53, 10, 10});
  EXPECT_NEAR(delta_e_cmc(p, 2, 1), 0.5 * delta_e_cmc(p, 1, 1), 1e-12);
}

// Pair 2 (S2 reference, P2 sample), CMC(1:1):
//   S2 = (84.100957, -7.824836, 48.756347), C1 = 49.380254, h1 = 99.1176 deg
//   SL = 0.040975 L1 / (1 + 0.01765 L1) = 1.387080
//   SC = 0.0638 C1 / (1 + 0.0131 C1) + 0.638 = 2.550986
//   F = sqrt(C1^4 / (C1^4 + 1900)) = 0.999840
//   h1 outside [164, 345]: T = 0.36 + |0.4 cos(h1 + 35)| = 0.638453
//   SH = SC (F T + 1 - F) = 1.628832
//   dE_CMC(1:1) = 0.609740
TEST(Cmc, WorkedExamplePairTwoRegression) {
  const WorkedExample ap;
  EXPECT_NEAR(delta_e_cmc(pair_differences(ap.s2, ap.p2), 1, 1), 0.609740, 1e-6);
}

TEST(Cmc, RejectsNonPositiveWeights) {
  const auto p = pair_differences({50, 1, 1}, {51, 1, 1});
  EXPECT_THROW(delta_e_cmc(p, 0, 1), DomainError);
  EXPECT_THROW(delta_e_cmc(p, 1, 0), DomainError);
}

TEST(Ciede2000, WorkedExamplePairs) {
  const WorkedExample ap;
  EXPECT_NEAR(delta_e_ciede2000(ap.s1, ap.p1).de00, 0.95, 0.01);
  EXPECT_NEAR(delta_e_ciede2000(ap.s2, ap.p2).de00, 0.61, 0.01);
}

TEST(Ciede2000, IdenticalColors) {
  const auto bd = delta_e_ciede2000(ColorLab{40, -20, 10}, ColorLab{40, -20, 10});
  EXPECT_EQ(bd.dL_prime, 0.0);
  EXPECT_EQ(bd.dC_prime, 0.0);
  EXPECT_EQ(bd.dH_prime, 0.0);
  EXPECT_EQ(bd.de00, 0.0);
}

TEST(Ciede2000, PublishedTestData) {
  for (std::size_t i = 0; i < kSharma.size(); ++i) {
    const auto& r = kSharma[i];
    EXPECT_NEAR(delta_e_ciede2000(r.c1, r.c2).de00, r.de00, 1e-4) << "row " << i + 1;
    EXPECT_NEAR(oracle::ciede2000(r.c1.L, r.c1.a, r.c1.b, r.c2.L, r.c2.a, r.c2.b).de00, r.de00, 1e-4)
        << "oracle row " << i + 1;
  }
}

TEST(Ciede2000, RejectsNonPositiveFactors) {
  EXPECT_THROW(delta_e_ciede2000(ColorLab{50, 0, 0}, ColorLab{51, 0, 0}, 0, 1, 1), DomainError);
}

TEST(Ciede2000, BreakdownIdentityAndSymmetry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> L(5, 95), ab(-80, 80);
  for (int i = 0; i < 10000; ++i) {
    const ColorLab c1{L(rng), ab(rng), ab(rng)}, c2{L(rng), ab(rng), ab(rng)};
    const auto bd = delta_e_ciede2000(c1, c2);
    ASSERT_NEAR(bd.de00 * bd.de00,
                bd.dL_prime * bd.dL_prime + bd.dC_prime * bd.dC_prime +
                    bd.dH_prime * bd.dH_prime + bd.rt_term,
                1e-9);
    ASSERT_NEAR(bd.de00, delta_e_ciede2000(c2, c1).de00, 1e-9);
    ASSERT_GT(bd.de00, 0.0);
  }
}

TEST(Ciede2000, KFactorsDivideTerms) {
  const ColorLab c1{50, 20, -10}, c2{53, 24, -6};
  const auto unit = delta_e_ciede2000(c1, c2);
  const auto scaled = delta_e_ciede2000(c1, c2, 2.0, 0.5, 4.0);
  EXPECT_NEAR(scaled.dL_prime, unit.dL_prime / 2.0, 1e-12);
  EXPECT_NEAR(scaled.dC_prime, unit.dC_prime / 0.5, 1e-12);
  EXPECT_NEAR(scaled.dH_prime, unit.dH_prime / 4.0, 1e-12);
}

TEST(DeltaENs, WorkedExamplePairs) {
  const WorkedExample ap;
  const NsResult r1 = delta_e_ns(ap.s1, ap.p1);
  EXPECT_NEAR(r1.d_l, 0.35, 0.01);
  EXPECT_NEAR(r1.de_ns, 1.25, 0.01);
  EXPECT_NEAR(r1.d_l, 0.08 * r1.de00 + 0.27, 1e-12);
  const NsResult r2 = delta_e_ns(ap.s2, ap.p2);
  EXPECT_NEAR(r2.d_l, 0.32, 0.01);
  EXPECT_NEAR(r2.de_ns, 0.80, 0.01);
  EXPECT_NEAR(r2.d_l, 0.08 * r2.de00 + 0.27, 1e-12);
}

TEST(DeltaENs, IdenticalIsZero) {
  EXPECT_EQ(delta_e_ns({40, 5, 5}, {40, 5, 5}).de_ns, 0.0);
}

TEST(DeltaENs, NoLightnessDifferenceLeavesDe00) {
  const NsResult r = delta_e_ns({50, 20, 10}, {50, 22, 13});
  EXPECT_NEAR(r.de_ns, r.de00, 1e-12);
}

TEST(DeltaENs, ExceedsDe00BelowCrossover) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> L(5, 95), ab(-80, 80), small(-4, 4);
  for (int i = 0; i < 5000; ++i) {
    const ColorLab c1{L(rng), ab(rng), ab(rng)};
    const ColorLab c2{c1.L + small(rng), c1.a + small(rng), c1.b + small(rng)};
    const NsResult r = delta_e_ns(c1, c2);
    if (c2.L == c1.L) continue;
    if (r.de00 < 9.125) ASSERT_GE(r.de_ns, r.de00);
    else ASSERT_LE(r.de_ns, r.de00);
  }
}

TEST(FormulaIds, ParseAliases) {
  EXPECT_EQ(parse_formula("ciede2000"), FormulaId::ciede2000);
  EXPECT_EQ(parse_formula("CAM16-UCS"), FormulaId::cam16_ucs);
  EXPECT_EQ(parse_formula("cie94"), FormulaId::cie94);
  EXPECT_THROW(parse_formula("bfd"), LookupError);
  EXPECT_THROW(formula_components(FormulaId::cam02_ucs, pair_differences({}, {})),
               NotImplementedError);
}
