#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace nlcn {

/// Coordinates in the plane; 1D meshes leave the second entry at zero.
using Point = std::array<double, 2>;

/// Integer position on the structured vertex/node lattice.
using LatticeIndex = std::array<int, 2>;

/// Uniform simplicial partition of an interval or of the unit square.
///
/// Vertices carry their lattice position so that node identity and boundary
/// membership of derived Lagrange spaces are decided by integer arithmetic.
struct SimplicialMesh {
  int dim = 1;
  int cells_per_side = 0;  ///< n: elements per interval, squares per side in 2D
  Point lower{0.0, 0.0};
  Point upper{1.0, 1.0};
  std::vector<Point> vertices;
  std::vector<LatticeIndex> vertex_lattice;
  std::vector<std::array<int, 3>> simplexes;  ///< 2 used entries in 1D, 3 in 2D
  std::vector<bool> boundary_vertex_flags;

  [[nodiscard]] std::size_t n_elements() const { return simplexes.size(); }
  [[nodiscard]] std::size_t n_vertices() const { return vertices.size(); }
  [[nodiscard]] int vertices_per_simplex() const { return dim + 1; }

  /// Max element diameter.
  [[nodiscard]] double h() const;

  /// Length (1D) or area (2D) of a simplex.
  [[nodiscard]] double measure(std::size_t element) const;

  [[nodiscard]] double diameter(std::size_t element) const;
};

SimplicialMesh uniform_interval_mesh(double a, double b, int n);

/// Unit square split into n x n squares, each cut along the (0,0)-(1,1) diagonal.
SimplicialMesh uniform_square_mesh(int n);

/// Continuous degree-k Lagrange space on a mesh, vanishing on the boundary
/// for its free nodes.
class LagrangeSpace {
 public:
  LagrangeSpace(SimplicialMesh mesh, int degree);

  [[nodiscard]] const SimplicialMesh& mesh() const { return mesh_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int dim() const { return mesh_.dim; }
  [[nodiscard]] std::size_t n_nodes() const { return nodes_.size(); }
  [[nodiscard]] const std::vector<Point>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<LatticeIndex>& node_lattice() const { return node_lattice_; }
  [[nodiscard]] const std::vector<std::size_t>& free_node_indices() const { return free_nodes_; }
  [[nodiscard]] const std::vector<bool>& boundary_node_flags() const { return boundary_nodes_; }
  [[nodiscard]] bool is_free(std::size_t node) const { return !boundary_nodes_[node]; }
  [[nodiscard]] std::size_t dofs_per_element() const;

  /// Global node indices of an element, in the local order of the reference
  /// basis (see `reference_multi_indices`).
  [[nodiscard]] const std::vector<std::size_t>& element_nodes(std::size_t element) const {
    return element_nodes_[element];
  }

  [[nodiscard]] double h() const { return mesh_.h(); }

 private:
  SimplicialMesh mesh_;
  int degree_;
  std::vector<Point> nodes_;
  std::vector<LatticeIndex> node_lattice_;
  std::vector<bool> boundary_nodes_;
  std::vector<std::size_t> free_nodes_;
  std::vector<std::vector<std::size_t>> element_nodes_;
};

using SpacePtr = std::shared_ptr<const LagrangeSpace>;

SpacePtr build_lagrange_space(const SimplicialMesh& mesh, int k);

}  // namespace nlcn
