#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "nlcn/assembly.hpp"
#include "nlcn/mesh.hpp"

namespace nlcn {

/// Time factor l(t) of separated solutions u = k(x) l(t) with l' = -l^{2 gamma + 1}:
///   gamma > 0:  (2 gamma (t - C))^{-1/(2 gamma)}, defined for t > C;
///   gamma < 0:  [2|gamma| (C - t)]_+^{1/(2|gamma|)}, zero from t = C on.
/// Throws GammaZero for gamma = 0 and InvalidRange for gamma > 0, t <= C.
double l_of_t(double gamma, double C, double t);

/// Variation-of-constants solution of w + alpha w'' = g on [0, x]:
///   (C1 + 1/sqrt(a) int_0^x g cos(xi/sqrt(a))) sin(x/sqrt(a))
///   + (C2 - 1/sqrt(a) int_0^x g sin(xi/sqrt(a))) cos(x/sqrt(a)).
/// The inner integrals use composite Gauss-Legendre quadrature.
double w_profile_1d(const std::function<double(double)>& g, double alpha, double C1, double C2, double x);

/// Separated solution of w + alpha Laplace(w) = 0 vanishing on x = 0 and y = 0:
///   A2 sin(sqrt(lambda/alpha) x) * B2 sin(sqrt((1 - lambda)/alpha) y), 0 < lambda < 1.
double w_profile_2d(double A2, double B2, double lambda, double alpha, double x, double y);

struct AlphaSolveConfig {
  double lower = 0.1;
  double upper = 0.3;
  double tolerance = 1e-14;  ///< bound on |alpha - G(alpha)|
  int max_iterations = 200;
  int quadrature_points = 48;  ///< Gauss-Legendre points per direction for int w^2

  void validate() const;
};

struct AlphaSolveResult {
  double alpha = 0.0;
  double residual = 0.0;  ///< |alpha - G(alpha)|
  int iterations = 0;
};

/// Bracketed root of alpha - G(alpha): bisection safeguarding secant steps.
AlphaSolveResult solve_alpha(const std::function<double(double)>& G, const AlphaSolveConfig& config);

enum class CaseId { Example1, Example2, Example3 };

std::string_view to_string(CaseId id);
CaseId case_id_from_string(std::string_view name);
int case_dimension(CaseId id);

/// One explicit-solution configuration with all constants resolved.
struct ManufacturedCase {
  CaseId id = CaseId::Example1;
  int dim = 1;
  double gamma = 0.0;
  double C = 0.0;       ///< time shift in l(t)
  double alpha = 0.0;   ///< solved fixed point alpha = (int w^2)^gamma
  double C1 = 0.0;      ///< 1D: variation-of-constants constants
  double C2 = 0.0;
  double C3 = 0.0;      ///< 2D: amplitude A2 * B2
  double lambda = 0.0;  ///< 2D: separation constant
  double validity_horizon = 0.0;  ///< closed forms valid on [0, horizon)
  double default_t_end = 0.0;
  std::string notes;

  std::function<double(const Point&)> g;
  std::function<double(const Point&)> k;
  std::function<double(double)> l;
  SpaceTimeField u;
  SpaceTimeField f;
  SpatialField u0;

  /// Fixed-point map G(alpha) = (int w(., alpha)^2)^gamma that defined alpha.
  std::function<double(double)> G;
  AlphaSolveConfig alpha_config;

  [[nodiscard]] double fixed_point_residual() const { return std::abs(alpha - G(alpha)); }
};

/// Fixed-point map of a case and the bracket it is solved on.
std::function<double(double)> alpha_map(CaseId id, int quadrature_points = 48);
AlphaSolveConfig default_alpha_config(CaseId id);

ManufacturedCase make_case(CaseId id);

struct ResidualReport {
  double max_pde_residual = 0.0;        ///< |u_t - a(u) Lap u - f| over the sample grid
  double fixed_point_residual = 0.0;    ///< |alpha - G(alpha)|
  double max_boundary_trace = 0.0;      ///< |u| at boundary samples (pinned to zero)
  double max_closed_form_boundary = 0.0;  ///< raw closed form at the boundary, before pinning
  double max_coefficient_mismatch = 0.0;  ///< |a(u(., t)) - alpha l(t)^{2 gamma}|
  double initial_integral = 0.0;        ///< int u0
  std::size_t samples = 0;
};

/// Samples the strong-form residual with quadrature for a(u) and fourth-order
/// central differences for u_t and Lap u.
ResidualReport verify_case(const ManufacturedCase& c);

}  // namespace nlcn
