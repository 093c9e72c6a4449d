#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nlcn/basis.hpp"
#include "nlcn/error.hpp"

using namespace nlcn;

class BasisDegree : public ::testing::TestWithParam<std::tuple<int, int>> {};

TEST_P(BasisDegree, KroneckerAtNodes) {
  const auto [dim, k] = GetParam();
  const LagrangeBasis b(dim, k);
  std::vector<double> v(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    b.values(b.node(j), v);
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(v[i], i == j ? 1.0 : 0.0, 1e-13);
  }
}

TEST_P(BasisDegree, PartitionOfUnity) {
  const auto [dim, k] = GetParam();
  const LagrangeBasis b(dim, k);
  std::vector<double> v(b.size());
  std::vector<Point> g(b.size());
  const Point xi = dim == 1 ? Point{0.37, 0.0} : Point{0.21, 0.33};
  b.values(xi, v);
  b.gradients(xi, g);
  double s = 0.0;
  Point gs{0.0, 0.0};
  for (std::size_t i = 0; i < b.size(); ++i) {
    s += v[i];
    gs[0] += g[i][0];
    gs[1] += g[i][1];
  }
  EXPECT_NEAR(s, 1.0, 1e-13);
  EXPECT_NEAR(gs[0], 0.0, 1e-12);
  EXPECT_NEAR(gs[1], 0.0, 1e-12);
}

TEST_P(BasisDegree, GradientMatchesFiniteDifference) {
  const auto [dim, k] = GetParam();
  const LagrangeBasis b(dim, k);
  const std::size_t n = b.size();
  std::vector<double> vp(n), vm(n);
  std::vector<Point> g(n);
  const Point xi = dim == 1 ? Point{0.43, 0.0} : Point{0.27, 0.18};
  b.gradients(xi, g);
  const double eps = 1e-6;
  for (int d = 0; d < dim; ++d) {
    Point plus = xi, minus = xi;
    plus[d] += eps;
    minus[d] -= eps;
    b.values(plus, vp);
    b.values(minus, vm);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(g[i][d], (vp[i] - vm[i]) / (2 * eps), 1e-7);
  }
}

INSTANTIATE_TEST_SUITE_P(AllDegrees, BasisDegree,
                         ::testing::Values(std::tuple{1, 1}, std::tuple{1, 2}, std::tuple{1, 3}, std::tuple{2, 1},
                                           std::tuple{2, 2}, std::tuple{2, 3}));

TEST(LagrangeBasis, RejectsDegreeZero) { EXPECT_THROW(LagrangeBasis(1, 0), Error); }

TEST(ElementGeometry, MapsReferenceCornersToVertices) {
  const auto m = uniform_square_mesh(3);
  for (std::size_t e = 0; e < m.n_elements(); ++e) {
    const auto geo = element_geometry(m, e);
    const auto& s = m.simplexes[e];
    const Point corners[] = {{0, 0}, {1, 0}, {0, 1}};
    for (int c = 0; c < 3; ++c) {
      const Point x = geo.map(corners[c]);
      EXPECT_NEAR(x[0], m.vertices[s[c]][0], 1e-15);
      EXPECT_NEAR(x[1], m.vertices[s[c]][1], 1e-15);
    }
    EXPECT_NEAR(geo.det, 2.0 * m.measure(e), 1e-15);
  }
}
