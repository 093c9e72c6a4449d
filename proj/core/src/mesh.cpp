#include "nlcn/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "nlcn/basis.hpp"
#include "nlcn/error.hpp"

namespace nlcn {

namespace {

double distance(const Point& p, const Point& q) {
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

}  // namespace

double SimplicialMesh::measure(std::size_t element) const {
  const auto& s = simplexes[element];
  const Point& p0 = vertices[s[0]];
  const Point& p1 = vertices[s[1]];
  if (dim == 1) return std::abs(p1[0] - p0[0]);
  const Point& p2 = vertices[s[2]];
  const double cross = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  return 0.5 * std::abs(cross);
}

double SimplicialMesh::diameter(std::size_t element) const {
  const auto& s = simplexes[element];
  double d = 0.0;
  for (int i = 0; i < vertices_per_simplex(); ++i)
    for (int j = i + 1; j < vertices_per_simplex(); ++j)
      d = std::max(d, distance(vertices[s[i]], vertices[s[j]]));
  return d;
}

double SimplicialMesh::h() const {
  double h = 0.0;
  for (std::size_t e = 0; e < n_elements(); ++e) h = std::max(h, diameter(e));
  return h;
}

SimplicialMesh uniform_interval_mesh(double a, double b, int n) {
  if (!(a < b))
    throw Error(ErrorKind::InvalidRange, "interval requires a < b");
  if (n < 1)
    throw Error(ErrorKind::InvalidCount, "interval mesh needs at least one element");

  SimplicialMesh mesh;
  mesh.dim = 1;
  mesh.cells_per_side = n;
  mesh.lower = {a, 0.0};
  mesh.upper = {b, 0.0};
  mesh.vertices.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    // Endpoints are placed exactly; interior vertices by affine interpolation.
    const double x = (i == n) ? b : a + (b - a) * static_cast<double>(i) / n;
    mesh.vertices.push_back({x, 0.0});
    mesh.vertex_lattice.push_back({i, 0});
    mesh.boundary_vertex_flags.push_back(i == 0 || i == n);
  }
  for (int i = 0; i < n; ++i) mesh.simplexes.push_back({i, i + 1, -1});
  return mesh;
}

SimplicialMesh uniform_square_mesh(int n) {
  if (n < 1)
    throw Error(ErrorKind::InvalidCount, "square mesh needs at least one subdivision");

  SimplicialMesh mesh;
  mesh.dim = 2;
  mesh.cells_per_side = n;
  mesh.lower = {0.0, 0.0};
  mesh.upper = {1.0, 1.0};
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
      mesh.vertex_lattice.push_back({i, j});
      mesh.boundary_vertex_flags.push_back(i == 0 || j == 0 || i == n || j == n);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      mesh.simplexes.push_back({v00, v10, v11});
      mesh.simplexes.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

LagrangeSpace::LagrangeSpace(SimplicialMesh mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree) {
  if (degree_ < 1)
    throw Error(ErrorKind::InvalidDegree, "Lagrange degree must be >= 1, got " + std::to_string(degree_));
  if (mesh_.dim != 1 && mesh_.dim != 2)
    throw Error(ErrorKind::InvalidConfig, "only 1D and 2D meshes are supported");

  const auto local = reference_multi_indices(mesh_.dim, degree_);
  const int fine_n = degree_ * mesh_.cells_per_side;

  // Node identity is the fine-lattice index: a local node with barycentric
  // multi-index b sits at sum_i b_i * (vertex lattice)_i on a lattice k times finer.
  // Keys are ordered (row, column) so numbering is x-fastest.
  std::map<std::pair<int, int>, std::size_t> index_of;
  std::vector<std::vector<LatticeIndex>> element_lattice(mesh_.n_elements());
  for (std::size_t e = 0; e < mesh_.n_elements(); ++e) {
    const auto& s = mesh_.simplexes[e];
    element_lattice[e].reserve(local.size());
    for (const auto& b : local) {
      LatticeIndex li{0, 0};
      for (int v = 0; v < mesh_.vertices_per_simplex(); ++v) {
        li[0] += b[v] * mesh_.vertex_lattice[s[v]][0];
        li[1] += b[v] * mesh_.vertex_lattice[s[v]][1];
      }
      element_lattice[e].push_back(li);
      index_of.emplace(std::pair{li[1], li[0]}, 0);
    }
  }

  std::size_t next = 0;
  for (auto& [key, idx] : index_of) {
    idx = next++;
    const LatticeIndex li{key.second, key.first};
    node_lattice_.push_back(li);
    Point p{0.0, 0.0};
    for (int d = 0; d < mesh_.dim; ++d) {
      const double frac = static_cast<double>(li[d]) / fine_n;
      p[d] = (li[d] == fine_n) ? mesh_.upper[d]
                               : mesh_.lower[d] + (mesh_.upper[d] - mesh_.lower[d]) * frac;
    }
    nodes_.push_back(p);
    bool on_boundary = li[0] == 0 || li[0] == fine_n;
    if (mesh_.dim == 2) on_boundary = on_boundary || li[1] == 0 || li[1] == fine_n;
    boundary_nodes_.push_back(on_boundary);
  }

  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!boundary_nodes_[i]) free_nodes_.push_back(i);

  element_nodes_.resize(mesh_.n_elements());
  for (std::size_t e = 0; e < mesh_.n_elements(); ++e) {
    element_nodes_[e].reserve(local.size());
    for (const auto& li : element_lattice[e])
      element_nodes_[e].push_back(index_of.at({li[1], li[0]}));
  }
}

std::size_t LagrangeSpace::dofs_per_element() const {
  return mesh_.dim == 1 ? static_cast<std::size_t>(degree_ + 1)
                        : static_cast<std::size_t>((degree_ + 1) * (degree_ + 2) / 2);
}

SpacePtr build_lagrange_space(const SimplicialMesh& mesh, int k) {
  return std::make_shared<const LagrangeSpace>(mesh, k);
}

}  // namespace nlcn
