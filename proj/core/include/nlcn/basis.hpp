#pragma once

#include <array>
#include <span>
#include <vector>

#include "nlcn/mesh.hpp"

namespace nlcn {

/// Barycentric multi-index of an equally spaced Lagrange node; entries sum to k.
/// Only the first dim+1 entries are used.
using MultiIndex = std::array<int, 3>;

/// Local node ordering shared by every element of a given (dim, k).
std::vector<MultiIndex> reference_multi_indices(int dim, int k);

/// Degree-k Lagrange basis on the reference simplex (unit interval or the
/// triangle with vertices (0,0), (1,0), (0,1)), in Silvester's product form
///   phi_b(lambda) = prod_i R_{b_i}(k lambda_i),  R_m(z) = prod_{s<m} (z - s)/(s + 1).
class LagrangeBasis {
 public:
  LagrangeBasis(int dim, int k);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int degree() const { return k_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }
  [[nodiscard]] const std::vector<MultiIndex>& multi_indices() const { return indices_; }

  /// Reference coordinates of local node i.
  [[nodiscard]] Point node(std::size_t i) const;

  void values(const Point& xi, std::span<double> out) const;

  /// Gradients with respect to reference coordinates.
  void gradients(const Point& xi, std::span<Point> out) const;

 private:
  int dim_;
  int k_;
  std::vector<MultiIndex> indices_;
};

/// Affine map from the reference simplex onto one mesh element.
struct ElementGeometry {
  Point origin{};
  std::array<std::array<double, 2>, 2> jacobian{};      ///< columns are edge vectors
  std::array<std::array<double, 2>, 2> inv_jacobian{};
  double det = 0.0;                                      ///< |det J| (length or 2*area)
  int dim = 1;

  [[nodiscard]] Point map(const Point& xi) const;

  /// Physical gradient from a reference gradient: J^{-T} g.
  [[nodiscard]] Point push_gradient(const Point& ref_grad) const;
};

ElementGeometry element_geometry(const SimplicialMesh& mesh, std::size_t element);

}  // namespace nlcn
