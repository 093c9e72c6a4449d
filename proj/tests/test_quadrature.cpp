#include <gtest/gtest.h>

#include <cmath>

#include "nlcn/quadrature.hpp"

using namespace nlcn;

namespace {

// int_0^1 x^p dx and int_T x^p y^q over the unit triangle = p! q! / (p+q+2)!
double interval_monomial(int p) { return 1.0 / (p + 1); }

double triangle_monomial(int p, int q) {
  return std::tgamma(p + 1.0) * std::tgamma(q + 1.0) / std::tgamma(p + q + 3.0);
}

}  // namespace

TEST(GaussLegendre, TwoPointNodes) {
  std::vector<double> x, w;
  gauss_legendre(2, x, w);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_NEAR(x[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(x[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(w[0], 1.0, 1e-15);
}

TEST(IntervalRule, WeightsSumToOne) {
  for (int d = 0; d <= 20; ++d) {
    const auto r = interval_rule(d);
    double s = 0.0;
    for (double w : r.weights) s += w;
    EXPECT_NEAR(s, 1.0, 1e-14) << "degree " << d;
  }
}

TEST(IntervalRule, ExactToDeclaredDegree) {
  for (int d = 0; d <= 20; ++d) {
    const auto r = interval_rule(d);
    ASSERT_GE(r.degree, d);
    for (int p = 0; p <= r.degree; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.points[i][0], p);
      EXPECT_NEAR(s, interval_monomial(p), 1e-13 * interval_monomial(p)) << "degree " << d << " p " << p;
    }
  }
}

TEST(TriangleRule, WeightsSumToHalf) {
  for (int d = 0; d <= 14; ++d) {
    const auto r = triangle_rule(d);
    double s = 0.0;
    for (double w : r.weights) s += w;
    EXPECT_NEAR(s, 0.5, 1e-14) << "degree " << d;
  }
}

TEST(TriangleRule, ExactToDeclaredDegree) {
  for (int d = 0; d <= 14; ++d) {
    const auto r = triangle_rule(d);
    ASSERT_GE(r.degree, d);
    for (int p = 0; p <= r.degree; ++p)
      for (int q = 0; p + q <= r.degree; ++q) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
          s += r.weights[i] * std::pow(r.points[i][0], p) * std::pow(r.points[i][1], q);
        const double exact = triangle_monomial(p, q);
        EXPECT_NEAR(s, exact, 1e-13 * exact) << "degree " << d << " x^" << p << " y^" << q;
      }
  }
}

TEST(TriangleRule, PointsInsideReferenceTriangle) {
  const auto r = triangle_rule(10);
  for (const auto& p : r.points) {
    EXPECT_GT(p[0], 0.0);
    EXPECT_GT(p[1], 0.0);
    EXPECT_LT(p[0] + p[1], 1.0);
  }
}
