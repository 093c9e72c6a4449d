#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlcn/assembly.hpp"
#include "nlcn/error.hpp"
#include "nlcn/nonlocal.hpp"

using namespace nlcn;

TEST(FromEnergy, UnitEnergyGivesOne) {
  for (double g : {-0.4, 0.5, 2.0}) EXPECT_DOUBLE_EQ(NonlocalCoefficient{g}.from_energy(1.0), 1.0);
}

TEST(FromEnergy, ZeroExponentGivesOne) {
  EXPECT_EQ(NonlocalCoefficient{0.0}.from_energy(0.0), 1.0);
  EXPECT_EQ(NonlocalCoefficient{0.0}.from_energy(17.0), 1.0);
}

TEST(FromEnergy, NegativeHalf) { EXPECT_DOUBLE_EQ(NonlocalCoefficient{-0.5}.from_energy(0.25), 2.0); }

TEST(FromEnergy, ZeroEnergyDegeneracy) {
  try {
    (void)NonlocalCoefficient{-1.0 / 3.0}.from_energy(0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateCoefficient);
  }
  EXPECT_EQ(NonlocalCoefficient{0.5}.from_energy(0.0), 0.0);
  NonlocalCoefficient strict{0.5};
  strict.strict_positivity = true;
  EXPECT_THROW((void)strict.from_energy(0.0), Error);
}

TEST(Evaluate, UsesMassNorm) {
  const auto s = build_lagrange_space(uniform_interval_mesh(0, 1, 64), 2);
  const auto M = assemble_mass(*s);
  const auto U = interpolate(s, [](const Point& p) { return std::sin(std::numbers::pi * p[0]); });
  EXPECT_NEAR(evaluate(NonlocalCoefficient{0.5}, U, M), std::sqrt(0.5), 1e-8);
}

TEST(CheckGuards, Classification) {
  const NonlocalCoefficient c{0.5};
  EXPECT_EQ(check_guards(1.0, c), GuardStatus::Ok);
  EXPECT_EQ(check_guards(1e-15, c), GuardStatus::BelowFloor);
  EXPECT_EQ(check_guards(1e13, c), GuardStatus::AboveCeiling);
  EXPECT_EQ(check_guards(INFINITY, c), GuardStatus::AboveCeiling);
}

TEST(CheckGuards, NegativeExponentLeavesCeilingAsEnergyVanishes) {
  const NonlocalCoefficient c{-1.0 / 3.0};
  EXPECT_EQ(check_guards(c.from_energy(1e-3), c), GuardStatus::Ok);
  EXPECT_EQ(check_guards(c.from_energy(1e-40), c), GuardStatus::AboveCeiling);
}

TEST(Validate, GuardBand) {
  NonlocalCoefficient c{0.5};
  c.floor_m = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c.floor_m = 2.0;
  c.ceil_M = 1.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(LipschitzWitness, SmallPerturbationMatchesDerivative) {
  const auto s = build_lagrange_space(uniform_interval_mesh(0, 1, 32), 2);
  const auto M = assemble_mass(*s);
  const auto W = interpolate(s, [](const Point& p) { return std::sin(std::numbers::pi * p[0]); });
  const auto e = interpolate(s, [](const Point& p) { return p[0] * (1 - p[0]); });
  const double eps = 1e-7;
  const auto V = linear_combination(1.0, W, eps, e);
  const double gamma = 0.5;
  const double sW = l2_norm_sq(W, M);
  const double norm_e = std::sqrt(l2_norm_sq(e, M));
  // d/de (s^gamma) = 2 gamma s^{gamma-1} (W, e)_M
  const double expected = std::abs(2 * gamma * std::pow(sW, gamma - 1) * M.bilinear(W.values, e.values)) / norm_e;
  EXPECT_NEAR(lipschitz_witness(NonlocalCoefficient{gamma}, V, W, M), expected, 1e-5 * expected);
}

TEST(LipschitzWitness, ConstantCoefficientHasZeroRatio) {
  const auto s = build_lagrange_space(uniform_interval_mesh(0, 1, 8), 1);
  const auto M = assemble_mass(*s);
  const auto V = interpolate(s, [](const Point& p) { return p[0] * (1 - p[0]); });
  const auto W = linear_combination(2.0, V, 0.0, V);
  EXPECT_EQ(lipschitz_witness(NonlocalCoefficient{0.0}, V, W, M), 0.0);
}

TEST(LipschitzWitness, IdenticalInputs) {
  const auto s = build_lagrange_space(uniform_interval_mesh(0, 1, 8), 1);
  const auto M = assemble_mass(*s);
  const auto V = interpolate(s, [](const Point& p) { return p[0] * (1 - p[0]); });
  try {
    (void)lipschitz_witness(NonlocalCoefficient{0.5}, V, V, M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdenticalInputs);
  }
}
