#include "nlcn/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlcn/basis.hpp"
#include "nlcn/error.hpp"
#include "nlcn/quadrature.hpp"

namespace nlcn {

namespace {

// Basis values and reference gradients at every point of one rule.
struct Tabulation {
  QuadratureRule rule;
  std::size_t n_basis = 0;
  std::vector<double> values;     // [q * n_basis + i]
  std::vector<Point> gradients;   // [q * n_basis + i]

  Tabulation(int dim, int k, int degree) : rule(simplex_rule(dim, degree)) {
    const LagrangeBasis basis(dim, k);
    n_basis = basis.size();
    values.resize(rule.size() * n_basis);
    gradients.resize(rule.size() * n_basis);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      basis.values(rule.points[q], std::span<double>(values.data() + q * n_basis, n_basis));
      basis.gradients(rule.points[q], std::span<Point>(gradients.data() + q * n_basis, n_basis));
    }
  }

  [[nodiscard]] double value(std::size_t q, std::size_t i) const { return values[q * n_basis + i]; }
  [[nodiscard]] const Point& gradient(std::size_t q, std::size_t i) const { return gradients[q * n_basis + i]; }
};

int resolve_degree(const LagrangeSpace& space, int requested) {
  return requested >= 0 ? requested : assembly_quadrature_degree(space.degree());
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }

DenseMatrix element_mass(const LagrangeSpace& space, std::size_t e, const Tabulation& tab) {
  const ElementGeometry geo = element_geometry(space.mesh(), e);
  DenseMatrix m(tab.n_basis);
  for (std::size_t q = 0; q < tab.rule.size(); ++q) {
    const double w = tab.rule.weights[q] * geo.det;
    for (std::size_t i = 0; i < tab.n_basis; ++i)
      for (std::size_t j = 0; j < tab.n_basis; ++j) m(i, j) += w * tab.value(q, i) * tab.value(q, j);
  }
  return m;
}

DenseMatrix element_stiffness(const LagrangeSpace& space, std::size_t e, const Tabulation& tab) {
  const ElementGeometry geo = element_geometry(space.mesh(), e);
  DenseMatrix m(tab.n_basis);
  std::vector<Point> grads(tab.n_basis);
  for (std::size_t q = 0; q < tab.rule.size(); ++q) {
    const double w = tab.rule.weights[q] * geo.det;
    for (std::size_t i = 0; i < tab.n_basis; ++i) grads[i] = geo.push_gradient(tab.gradient(q, i));
    for (std::size_t i = 0; i < tab.n_basis; ++i)
      for (std::size_t j = 0; j < tab.n_basis; ++j) m(i, j) += w * dot(grads[i], grads[j]);
  }
  return m;
}

template <class ElementKernel>
SparseSymMatrix assemble(const LagrangeSpace& space, int quad_degree, ElementKernel kernel) {
  const Tabulation tab(space.dim(), space.degree(), resolve_degree(space, quad_degree));
  std::vector<SparseSymMatrix::Triplet> triplets;
  triplets.reserve(space.mesh().n_elements() * tab.n_basis * tab.n_basis);
  for (std::size_t e = 0; e < space.mesh().n_elements(); ++e) {
    const DenseMatrix local = kernel(space, e, tab);
    const auto& dofs = space.element_nodes(e);
    for (std::size_t i = 0; i < tab.n_basis; ++i)
      for (std::size_t j = 0; j < tab.n_basis; ++j) triplets.push_back({dofs[i], dofs[j], local(i, j)});
  }
  auto matrix = SparseSymMatrix::from_triplets(space.n_nodes(), std::move(triplets));
  return matrix;
}

}  // namespace

int assembly_quadrature_degree(int k) { return 2 * k + 2; }
int error_quadrature_degree(int k) { return 2 * k + 4; }

DenseMatrix element_mass_matrix(const LagrangeSpace& space, std::size_t element, int quad_degree) {
  return element_mass(space, element, Tabulation(space.dim(), space.degree(), resolve_degree(space, quad_degree)));
}

DenseMatrix element_stiffness_matrix(const LagrangeSpace& space, std::size_t element, int quad_degree) {
  return element_stiffness(space, element,
                           Tabulation(space.dim(), space.degree(), resolve_degree(space, quad_degree)));
}

SparseSymMatrix assemble_mass(const LagrangeSpace& space, int quad_degree) {
  return assemble(space, quad_degree, element_mass);
}

SparseSymMatrix assemble_stiffness(const LagrangeSpace& space, int quad_degree) {
  return assemble(space, quad_degree, element_stiffness);
}

FieldVector assemble_load(const SpacePtr& space, const SpaceTimeField& f, double t, int quad_degree) {
  FieldVector out(space);
  if (!f) return out;
  const Tabulation tab(space->dim(), space->degree(), resolve_degree(*space, quad_degree));
  for (std::size_t e = 0; e < space->mesh().n_elements(); ++e) {
    const ElementGeometry geo = element_geometry(space->mesh(), e);
    const auto& dofs = space->element_nodes(e);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const Point x = geo.map(tab.rule.points[q]);
      const double fx = f(x, t);
      if (!std::isfinite(fx))
        throw Error(ErrorKind::NonFiniteForcing,
                    "forcing is not finite at x=(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) +
                        "), t=" + std::to_string(t));
      const double w = tab.rule.weights[q] * geo.det * fx;
      for (std::size_t i = 0; i < tab.n_basis; ++i) out.values[dofs[i]] += w * tab.value(q, i);
    }
  }
  return out;
}

FieldVector interpolate(const SpacePtr& space, const SpatialField& u) {
  FieldVector out(space);
  const auto& nodes = space->nodes();
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!space->is_free(j)) continue;
    const double v = u(nodes[j]);
    if (!std::isfinite(v))
      throw Error(ErrorKind::NonFiniteData, "interpolated data is not finite at node " + std::to_string(j));
    out.values[j] = v;
  }
  return out;
}

FieldVector ritz_rhs(const SpacePtr& space, const GradientField& grad_u, int quad_refinement) {
  FieldVector rhs(space);
  const Tabulation tab(space->dim(), space->degree(),
                       assembly_quadrature_degree(space->degree()) + std::max(0, quad_refinement));
  for (std::size_t e = 0; e < space->mesh().n_elements(); ++e) {
    const ElementGeometry geo = element_geometry(space->mesh(), e);
    const auto& dofs = space->element_nodes(e);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const Point g = grad_u(geo.map(tab.rule.points[q]));
      if (!std::isfinite(g[0]) || !std::isfinite(g[1]))
        throw Error(ErrorKind::NonFiniteData, "gradient is not finite at a quadrature point");
      const double w = tab.rule.weights[q] * geo.det;
      for (std::size_t i = 0; i < tab.n_basis; ++i)
        rhs.values[dofs[i]] += w * dot(g, geo.push_gradient(tab.gradient(q, i)));
    }
  }
  return rhs;
}

FieldVector ritz_project(const SpacePtr& space, const GradientField& grad_u, int quad_refinement,
                         const SolverConfig& solver) {
  const SparseSymMatrix K = assemble_stiffness(*space);
  return solve_spd(K, ritz_rhs(space, grad_u, quad_refinement), solver);
}

double l2_norm_sq(const FieldVector& U, const SparseSymMatrix& mass) {
  if (U.size() != mass.rows())
    throw Error(ErrorKind::DimensionMismatch, "field has " + std::to_string(U.size()) +
                                                  " entries, mass matrix " + std::to_string(mass.rows()));
  return std::max(0.0, mass.bilinear(U.values, U.values));
}

double integral(const FieldVector& U, const SparseSymMatrix& mass) {
  if (U.size() != mass.rows()) throw Error(ErrorKind::DimensionMismatch, "field/mass size mismatch");
  const std::vector<double> ones(U.size(), 1.0);
  return mass.bilinear(ones, U.values);
}

double evaluate_in_element(const FieldVector& U, std::size_t element, const Point& xi) {
  const LagrangeBasis basis(U.space->dim(), U.space->degree());
  std::vector<double> phi(basis.size());
  basis.values(xi, phi);
  const auto& dofs = U.space->element_nodes(element);
  double v = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) v += phi[i] * U.values[dofs[i]];
  return v;
}

double l2_error(const FieldVector& U, const SpaceTimeField& u_exact, double t, int quad_degree) {
  const LagrangeSpace& space = *U.space;
  const int degree = quad_degree >= 0 ? quad_degree : error_quadrature_degree(space.degree());
  const Tabulation tab(space.dim(), space.degree(), degree);
  double sum = 0.0;
  for (std::size_t e = 0; e < space.mesh().n_elements(); ++e) {
    const ElementGeometry geo = element_geometry(space.mesh(), e);
    const auto& dofs = space.element_nodes(e);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      double uh = 0.0;
      for (std::size_t i = 0; i < tab.n_basis; ++i) uh += tab.value(q, i) * U.values[dofs[i]];
      const double ue = u_exact(geo.map(tab.rule.points[q]), t);
      if (!std::isfinite(ue) || !std::isfinite(uh))
        throw Error(ErrorKind::NonFiniteData, "non-finite value in L2 error integrand");
      sum += tab.rule.weights[q] * geo.det * (uh - ue) * (uh - ue);
    }
  }
  return std::sqrt(sum);
}

double h1_seminorm_error(const FieldVector& U, const GradientField& grad_u, int quad_degree) {
  const LagrangeSpace& space = *U.space;
  const int degree = quad_degree >= 0 ? quad_degree : error_quadrature_degree(space.degree());
  const Tabulation tab(space.dim(), space.degree(), degree);
  double sum = 0.0;
  for (std::size_t e = 0; e < space.mesh().n_elements(); ++e) {
    const ElementGeometry geo = element_geometry(space.mesh(), e);
    const auto& dofs = space.element_nodes(e);
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      Point gh{0.0, 0.0};
      for (std::size_t i = 0; i < tab.n_basis; ++i) {
        const Point g = geo.push_gradient(tab.gradient(q, i));
        gh[0] += g[0] * U.values[dofs[i]];
        gh[1] += g[1] * U.values[dofs[i]];
      }
      const Point ge = grad_u(geo.map(tab.rule.points[q]));
      const double d0 = gh[0] - ge[0], d1 = gh[1] - ge[1];
      sum += tab.rule.weights[q] * geo.det * (d0 * d0 + d1 * d1);
    }
  }
  return std::sqrt(sum);
}

}  // namespace nlcn
