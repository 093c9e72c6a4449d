#pragma once

#include <functional>
#include <vector>

#include "nlcn/linalg.hpp"
#include "nlcn/mesh.hpp"
#include "nlcn/sparse.hpp"

namespace nlcn {

using SpatialField = std::function<double(const Point&)>;
using SpaceTimeField = std::function<double(const Point&, double)>;
using GradientField = std::function<Point(const Point&)>;

/// Quadrature degree used for assembled forms: 2k + 2.
int assembly_quadrature_degree(int k);

/// Quadrature degree used for error norms: two above assembly.
int error_quadrature_degree(int k);

/// Small dense row-major matrix for element-level checks.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit DenseMatrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

// Element matrices are indexed by the space's local node order.
DenseMatrix element_mass_matrix(const LagrangeSpace& space, std::size_t element, int quad_degree = -1);
DenseMatrix element_stiffness_matrix(const LagrangeSpace& space, std::size_t element, int quad_degree = -1);

/// M_ij = (phi_j, phi_i) over all nodes, boundary included.
SparseSymMatrix assemble_mass(const LagrangeSpace& space, int quad_degree = -1);

/// K_ij = (grad phi_j, grad phi_i) over all nodes, boundary included.
SparseSymMatrix assemble_stiffness(const LagrangeSpace& space, int quad_degree = -1);

/// F_i = int f(x, t) phi_i(x) dx. Throws NonFiniteForcing on NaN/inf samples.
FieldVector assemble_load(const SpacePtr& space, const SpaceTimeField& f, double t, int quad_degree = -1);

/// Nodal interpolant; boundary coefficients are forced to zero.
FieldVector interpolate(const SpacePtr& space, const SpatialField& u);

/// Ritz projection: K U = (grad u, grad phi_i) on free nodes, with the
/// right-hand side integrated at degree 2k + 2 + quad_refinement.
FieldVector ritz_project(const SpacePtr& space, const GradientField& grad_u, int quad_refinement = 2,
                         const SolverConfig& solver = {});

/// Right-hand side used by `ritz_project`, exposed for orthogonality checks.
FieldVector ritz_rhs(const SpacePtr& space, const GradientField& grad_u, int quad_refinement = 2);

/// U^T M U.
double l2_norm_sq(const FieldVector& U, const SparseSymMatrix& mass);

/// 1^T M U = int U.
double integral(const FieldVector& U, const SparseSymMatrix& mass);

/// Value of the discrete function at reference point xi of an element.
double evaluate_in_element(const FieldVector& U, std::size_t element, const Point& xi);

/// ||U - u(., t)||_{L2} by quadrature (default degree 2k + 4).
double l2_error(const FieldVector& U, const SpaceTimeField& u_exact, double t, int quad_degree = -1);

/// ||grad(U - u)||_{L2} by quadrature (default degree 2k + 4).
double h1_seminorm_error(const FieldVector& U, const GradientField& grad_u, int quad_degree = -1);

}  // namespace nlcn
