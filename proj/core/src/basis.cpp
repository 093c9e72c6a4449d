#include "nlcn/basis.hpp"

#include <cmath>

#include "nlcn/error.hpp"

namespace nlcn {

namespace {

// R_m(z) and its derivative.
void silvester(int m, double z, double& value, double& deriv) {
  value = 1.0;
  deriv = 0.0;
  for (int s = 0; s < m; ++s) {
    const double factor = (z - s) / (s + 1);
    deriv = deriv * factor + value / (s + 1);
    value *= factor;
  }
}

std::array<double, 3> barycentric(int dim, const Point& xi) {
  if (dim == 1) return {1.0 - xi[0], xi[0], 0.0};
  return {1.0 - xi[0] - xi[1], xi[0], xi[1]};
}

}  // namespace

std::vector<MultiIndex> reference_multi_indices(int dim, int k) {
  std::vector<MultiIndex> out;
  if (dim == 1) {
    for (int i = 0; i <= k; ++i) out.push_back({k - i, i, 0});
    return out;
  }
  for (int j = 0; j <= k; ++j)
    for (int i = 0; i + j <= k; ++i) out.push_back({k - i - j, i, j});
  return out;
}

LagrangeBasis::LagrangeBasis(int dim, int k) : dim_(dim), k_(k) {
  if (k < 1) throw Error(ErrorKind::InvalidDegree, "basis degree must be >= 1");
  indices_ = reference_multi_indices(dim, k);
}

Point LagrangeBasis::node(std::size_t i) const {
  const auto& b = indices_[i];
  return {static_cast<double>(b[1]) / k_, static_cast<double>(b[2]) / k_};
}

void LagrangeBasis::values(const Point& xi, std::span<double> out) const {
  const auto lambda = barycentric(dim_, xi);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    double v = 1.0;
    for (int c = 0; c <= dim_; ++c) {
      double r, dr;
      silvester(indices_[i][c], k_ * lambda[c], r, dr);
      v *= r;
    }
    out[i] = v;
  }
}

void LagrangeBasis::gradients(const Point& xi, std::span<Point> out) const {
  const auto lambda = barycentric(dim_, xi);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    std::array<double, 3> r{1.0, 1.0, 1.0}, dr{0.0, 0.0, 0.0};
    for (int c = 0; c <= dim_; ++c) silvester(indices_[i][c], k_ * lambda[c], r[c], dr[c]);
    // d lambda_0 / d xi_j = -1, d lambda_j / d xi_j = 1 (j = 1..dim)
    Point g{0.0, 0.0};
    for (int j = 1; j <= dim_; ++j) {
      double prod_j = k_ * dr[j];
      double prod_0 = -k_ * dr[0];
      for (int c = 0; c <= dim_; ++c) {
        if (c != j) prod_j *= r[c];
        if (c != 0) prod_0 *= r[c];
      }
      g[j - 1] = prod_j + prod_0;
    }
    out[i] = g;
  }
}

Point ElementGeometry::map(const Point& xi) const {
  Point x = origin;
  for (int d = 0; d < dim; ++d)
    for (int j = 0; j < dim; ++j) x[d] += jacobian[d][j] * xi[j];
  return x;
}

Point ElementGeometry::push_gradient(const Point& ref_grad) const {
  Point g{0.0, 0.0};
  for (int d = 0; d < dim; ++d)
    for (int j = 0; j < dim; ++j) g[d] += inv_jacobian[j][d] * ref_grad[j];
  return g;
}

ElementGeometry element_geometry(const SimplicialMesh& mesh, std::size_t element) {
  ElementGeometry geo;
  geo.dim = mesh.dim;
  const auto& s = mesh.simplexes[element];
  const Point& p0 = mesh.vertices[s[0]];
  geo.origin = p0;
  if (mesh.dim == 1) {
    const double len = mesh.vertices[s[1]][0] - p0[0];
    geo.jacobian[0][0] = len;
    geo.inv_jacobian[0][0] = 1.0 / len;
    geo.det = std::abs(len);
    return geo;
  }
  const Point& p1 = mesh.vertices[s[1]];
  const Point& p2 = mesh.vertices[s[2]];
  geo.jacobian = {{{p1[0] - p0[0], p2[0] - p0[0]}, {p1[1] - p0[1], p2[1] - p0[1]}}};
  const double det = geo.jacobian[0][0] * geo.jacobian[1][1] - geo.jacobian[0][1] * geo.jacobian[1][0];
  geo.inv_jacobian = {{{geo.jacobian[1][1] / det, -geo.jacobian[0][1] / det},
                       {-geo.jacobian[1][0] / det, geo.jacobian[0][0] / det}}};
  geo.det = std::abs(det);
  return geo;
}

}  // namespace nlcn
