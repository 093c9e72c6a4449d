#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlcn/assembly.hpp"
#include "nlcn/error.hpp"
#include "nlcn/quadrature.hpp"

using namespace nlcn;
using std::numbers::pi;

namespace {

SpacePtr interval_space(int n, int k) { return build_lagrange_space(uniform_interval_mesh(0.0, 1.0, n), k); }
SpacePtr square_space(int n, int k) { return build_lagrange_space(uniform_square_mesh(n), k); }

double sin_pi(const Point& p) { return std::sin(pi * p[0]); }

}  // namespace

TEST(ElementMatrices, IntervalP1MassAndStiffness) {
  const double h = 0.25;
  const auto s = interval_space(4, 1);
  const auto M = element_mass_matrix(*s, 2);
  const auto K = element_stiffness_matrix(*s, 2);
  EXPECT_NEAR(M(0, 0), h / 3, 1e-14);
  EXPECT_NEAR(M(0, 1), h / 6, 1e-14);
  EXPECT_NEAR(M(1, 0), h / 6, 1e-14);
  EXPECT_NEAR(M(1, 1), h / 3, 1e-14);
  EXPECT_NEAR(K(0, 0), 1 / h, 1e-14);
  EXPECT_NEAR(K(0, 1), -1 / h, 1e-14);
  EXPECT_NEAR(K(1, 1), 1 / h, 1e-14);
}

TEST(ElementMatrices, TriangleP1Mass) {
  const auto s = square_space(3, 1);
  for (std::size_t e = 0; e < 2; ++e) {
    const auto M = element_mass_matrix(*s, e);
    const double area = s->mesh().measure(e);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(M(i, j), area / 12 * (i == j ? 2 : 1), 1e-14);
  }
}

TEST(AssembleMass, EntriesSumToDomainMeasure) {
  for (int k = 1; k <= 3; ++k) {
    for (const auto& s : {interval_space(7, k), square_space(4, k)}) {
      const auto M = assemble_mass(*s);
      double total = 0.0;
      for (double v : M.values()) total += v;
      EXPECT_NEAR(total, 1.0, 1e-13);
      EXPECT_LE(M.max_asymmetry(), 1e-14 * M.max_abs());
    }
  }
}

TEST(AssembleStiffness, AnnihilatesConstants) {
  for (int k = 1; k <= 3; ++k) {
    for (const auto& s : {interval_space(7, k), square_space(4, k)}) {
      const auto K = assemble_stiffness(*s);
      const std::vector<double> ones(s->n_nodes(), 1.0);
      for (double v : K.multiply(ones)) EXPECT_LE(std::abs(v), 1e-12 * K.max_abs());
      EXPECT_LE(K.max_asymmetry(), 1e-14 * K.max_abs());
    }
  }
}

TEST(AssembleStiffness, FivePointStencilAtCenter) {
  const auto s = square_space(2, 1);
  const auto K = assemble_stiffness(*s);
  const std::size_t c = s->free_node_indices().front();
  EXPECT_NEAR(K.entry(c, c), 4.0, 1e-14);
}

TEST(AssembleLoad, ZeroForcing) {
  const auto s = interval_space(5, 2);
  EXPECT_TRUE(assemble_load(s, [](const Point&, double) { return 0.0; }, 0.0).is_zero());
}

TEST(AssembleLoad, UnitForcingOnHats) {
  const auto s = interval_space(4, 1);
  const auto F = assemble_load(s, [](const Point&, double) { return 1.0; }, 0.0);
  EXPECT_NEAR(F[0], 0.125, 1e-15);
  EXPECT_NEAR(F[4], 0.125, 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(F[i], 0.25, 1e-15);
}

TEST(AssembleLoad, QuadraticForcingAtMidNode) {
  // int x^2 phi(x) dx for the hat at x = 1/2 with h = 1/4 (exact rational 25/384).
  const auto s = interval_space(4, 1);
  const auto F = assemble_load(s, [](const Point& p, double t) { return p[0] * p[0] / ((t + 1) * (t + 1)); }, 0.0);
  EXPECT_NEAR(F[2], 0.065104166666666667, 1e-15);
}

TEST(AssembleLoad, RejectsNonFiniteForcing) {
  const auto s = interval_space(4, 1);
  try {
    assemble_load(s, [](const Point& p, double) { return p[0] > 0.5 ? NAN : 0.0; }, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFiniteForcing);
  }
}

TEST(Interpolate, ZeroField) { EXPECT_TRUE(interpolate(interval_space(3, 2), [](const Point&) { return 0.0; }).is_zero()); }

TEST(Interpolate, NodalValues) {
  const auto s = interval_space(4, 1);
  const auto U = interpolate(s, sin_pi);
  EXPECT_NEAR(U[1], std::sqrt(0.5), 1e-15);
  EXPECT_DOUBLE_EQ(U[2], 1.0);
  EXPECT_NEAR(U[3], std::sqrt(0.5), 1e-15);
  EXPECT_EQ(U[0], 0.0);
  EXPECT_EQ(U[4], 0.0);
}

TEST(Interpolate, ReproducesQuadratics) {
  const auto s = interval_space(5, 2);
  const auto U = interpolate(s, [](const Point& p) { return p[0] * (1 - p[0]); });
  EXPECT_LE(l2_error(U, [](const Point& p, double) { return p[0] * (1 - p[0]); }, 0.0), 1e-12);
}

TEST(Interpolate, RejectsNonFiniteNodalValue) {
  const auto s = interval_space(4, 1);
  EXPECT_THROW(interpolate(s, [](const Point& p) { return p[0] == 0.5 ? INFINITY : 1.0; }), Error);
}

TEST(RitzProjection, IdentityOnTheSpace) {
  const auto s = interval_space(6, 2);
  // x(1-x) lies in P2, so its projection is its interpolant.
  const auto U = ritz_project(s, [](const Point& p) { return Point{1 - 2 * p[0], 0.0}; });
  const auto I = interpolate(s, [](const Point& p) { return p[0] * (1 - p[0]); });
  for (std::size_t i = 0; i < U.size(); ++i) EXPECT_NEAR(U[i], I[i], 1e-10);
}

TEST(RitzProjection, FirstOrderInEnergyNorm) {
  const auto grad = [](const Point& p) { return Point{pi * std::cos(pi * p[0]), 0.0}; };
  const double e1 = h1_seminorm_error(ritz_project(interval_space(16, 1), grad), grad);
  const double e2 = h1_seminorm_error(ritz_project(interval_space(32, 1), grad), grad);
  EXPECT_NEAR(e1 / e2, 2.0, 0.05);
}

TEST(RitzProjection, GalerkinOrthogonality) {
  const auto grad = [](const Point& p) {
    return Point{pi * std::cos(pi * p[0]) * std::sin(pi * p[1]), pi * std::sin(pi * p[0]) * std::cos(pi * p[1])};
  };
  const auto s = square_space(5, 2);
  const auto U = ritz_project(s, grad);
  const auto K = assemble_stiffness(*s);
  const auto rhs = ritz_rhs(s, grad);
  const auto KU = K.multiply(U.values);
  for (std::size_t i : s->free_node_indices()) EXPECT_LE(std::abs(KU[i] - rhs[i]), 1e-10);
}

TEST(RitzProjection, AllBoundarySpaceIsSingular) {
  const auto s = square_space(1, 1);
  try {
    ritz_project(s, [](const Point&) { return Point{1.0, 0.0}; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularSystem);
  }
}

TEST(L2NormSq, ZeroAndSine) {
  const auto s = interval_space(64, 2);
  const auto M = assemble_mass(*s);
  EXPECT_EQ(l2_norm_sq(FieldVector(s), M), 0.0);
  EXPECT_NEAR(l2_norm_sq(interpolate(s, sin_pi), M), 0.5, 1e-8);
}

TEST(L2NormSq, MatchesDirectQuadrature) {
  const auto s = square_space(3, 2);
  const auto M = assemble_mass(*s);
  FieldVector U(s);
  for (std::size_t i : s->free_node_indices()) U[i] = 1.0;
  // Square of U through elementwise evaluation on a high-degree rule.
  double direct = 0.0;
  const auto rule = triangle_rule(8);
  for (std::size_t e = 0; e < s->mesh().n_elements(); ++e) {
    const double jac = 2.0 * s->mesh().measure(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double v = evaluate_in_element(U, e, rule.points[q]);
      direct += rule.weights[q] * jac * v * v;
    }
  }
  EXPECT_NEAR(l2_norm_sq(U, M), direct, 1e-14);
}

TEST(L2NormSq, DimensionMismatch) {
  const auto s = interval_space(4, 1);
  const auto M = assemble_mass(*interval_space(5, 1));
  try {
    (void)l2_norm_sq(FieldVector(s), M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(L2Error, SelfAndZero) {
  const auto s = interval_space(8, 3);
  const auto U = interpolate(s, [](const Point& p) { return p[0] * (1 - p[0]) * p[0]; });
  EXPECT_LE(l2_error(U, [](const Point& p, double) { return p[0] * (1 - p[0]) * p[0]; }, 0.0), 1e-12);
  EXPECT_NEAR(l2_error(FieldVector(s), [](const Point& p, double) { return std::sin(pi * p[0]); }, 0.0),
              1.0 / std::sqrt(2.0), 1e-8);
}
