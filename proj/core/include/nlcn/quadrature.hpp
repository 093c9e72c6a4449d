#pragma once

#include <vector>

#include "nlcn/mesh.hpp"

namespace nlcn {

/// Points and weights on a reference simplex. Weights sum to the reference
/// measure: 1 on the unit interval, 1/2 on the unit triangle.
struct QuadratureRule {
  int dim = 1;
  int degree = 0;  ///< polynomials up to this total degree are integrated exactly
  std::vector<Point> points;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
};

/// n-point Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Legendre rule on [0, 1] exact to the requested degree.
QuadratureRule interval_rule(int degree);

/// Collapsed (Duffy) Gauss-Legendre product rule on the unit triangle exact
/// to the requested degree.
QuadratureRule triangle_rule(int degree);

QuadratureRule simplex_rule(int dim, int degree);

}  // namespace nlcn
