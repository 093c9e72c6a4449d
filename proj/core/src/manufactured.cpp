#include "nlcn/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nlcn/error.hpp"
#include "nlcn/quadrature.hpp"

namespace nlcn {

namespace {

using std::numbers::pi;

struct GaussTable {
  std::vector<double> x;  // on [0, 1]
  std::vector<double> w;

  explicit GaussTable(int n) {
    gauss_legendre(n, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = 0.5 * (x[i] + 1.0);
      w[i] *= 0.5;
    }
  }
};

double integrate_unit_interval(const std::function<double(double)>& fn, int points) {
  const GaussTable gt(points);
  double s = 0.0;
  for (std::size_t i = 0; i < gt.x.size(); ++i) s += gt.w[i] * fn(gt.x[i]);
  return s;
}

double integrate_unit_square(const std::function<double(double, double)>& fn, int points) {
  const GaussTable gt(points);
  double s = 0.0;
  for (std::size_t i = 0; i < gt.x.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < gt.x.size(); ++j) row += gt.w[j] * fn(gt.x[i], gt.x[j]);
    s += gt.w[i] * row;
  }
  return s;
}

// Composite Gauss-Legendre on [0, x], panels no longer than 1/8.
double integrate_0_to(const std::function<double(double)>& fn, double x) {
  if (x == 0.0) return 0.0;
  static const GaussTable gt(16);
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(x) * 8.0)));
  const double width = x / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    for (std::size_t i = 0; i < gt.x.size(); ++i) s += gt.w[i] * fn(a + width * gt.x[i]);
  }
  return s * width;
}

// Example 1 profile: g = -x^2, C2 = 0, C1 fixed by w(1) = 0.
double example1_C1(double alpha) {
  const double s = std::sqrt(alpha);
  return (1.0 - 2.0 * alpha + 2.0 * alpha * std::cos(1.0 / s)) / std::sin(1.0 / s);
}

double example1_w(double alpha, double x) {
  const double s = std::sqrt(alpha);
  return example1_C1(alpha) * std::sin(x / s) - 2.0 * alpha * std::cos(x / s) - x * x + 2.0 * alpha;
}

// Example 2 profile: g = -sqrt(3/2) e^x, C2 = 0, sine coefficient fixed by w(1) = 0.
const double kSqrt32 = std::sqrt(1.5);

double example2_sine_coefficient(double alpha) {
  const double s = std::sqrt(alpha);
  return kSqrt32 * (std::numbers::e - std::cos(1.0 / s)) / ((alpha + 1.0) * std::sin(1.0 / s));
}

double example2_w(double alpha, double x) {
  const double s = std::sqrt(alpha);
  const double r = kSqrt32 / (alpha + 1.0);
  return example2_sine_coefficient(alpha) * std::sin(x / s) + r * std::cos(x / s) - r * std::exp(x);
}

const double kExample3Amplitude = std::pow(8.0 / (pi * pi), 0.25);

double example3_w(double alpha, double x, double y) {
  return w_profile_2d(kExample3Amplitude, 1.0, pi * pi * alpha, alpha, x, y);
}

bool on_boundary(int dim, const Point& p) {
  if (p[0] == 0.0 || p[0] == 1.0) return true;
  return dim == 2 && (p[1] == 0.0 || p[1] == 1.0);
}

}  // namespace

double l_of_t(double gamma, double C, double t) {
  if (gamma == 0.0) throw Error(ErrorKind::GammaZero, "separated solutions need gamma != 0");
  if (gamma > 0.0) {
    const double base = 2.0 * gamma * (t - C);
    if (!(base > 0.0)) throw Error(ErrorKind::InvalidRange, "l(t) with gamma > 0 is defined only for t > C");
    return std::pow(base, -1.0 / (2.0 * gamma));
  }
  const double base = 2.0 * std::abs(gamma) * (C - t);
  return base > 0.0 ? std::pow(base, 1.0 / (2.0 * std::abs(gamma))) : 0.0;
}

double w_profile_1d(const std::function<double(double)>& g, double alpha, double C1, double C2, double x) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::NonpositiveAlpha, "w profile needs alpha > 0");
  const double s = std::sqrt(alpha);
  const double ic = integrate_0_to([&](double xi) { return g(xi) * std::cos(xi / s); }, x);
  const double is = integrate_0_to([&](double xi) { return g(xi) * std::sin(xi / s); }, x);
  return (C1 + ic / s) * std::sin(x / s) + (C2 - is / s) * std::cos(x / s);
}

double w_profile_2d(double A2, double B2, double lambda, double alpha, double x, double y) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::NonpositiveAlpha, "w profile needs alpha > 0");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw Error(ErrorKind::LambdaOutOfRange, "separation constant must lie in (0, 1)");
  return A2 * std::sin(std::sqrt(lambda / alpha) * x) * B2 * std::sin(std::sqrt((1.0 - lambda) / alpha) * y);
}

void AlphaSolveConfig::validate() const {
  if (!(lower > 0.0)) throw Error(ErrorKind::InvalidConfig, "alpha bracket must be positive");
  if (!(upper > lower)) throw Error(ErrorKind::InvalidConfig, "alpha bracket must be nonempty");
  if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidConfig, "alpha tolerance must be positive");
  if (max_iterations < 1) throw Error(ErrorKind::InvalidConfig, "alpha solve needs iterations");
}

AlphaSolveResult solve_alpha(const std::function<double(double)>& G, const AlphaSolveConfig& config) {
  config.validate();
  const auto F = [&](double a) { return a - G(a); };
  double lo = config.lower, hi = config.upper;
  double f_lo = F(lo), f_hi = F(hi);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi))
    throw Error(ErrorKind::NoSignChange, "fixed-point map is not finite at the bracket ends");
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw Error(ErrorKind::NoSignChange, "alpha - G(alpha) has the same sign at both bracket ends");

  // Secant through the two most recent iterates; fall back to bisection when
  // the candidate leaves the bracket or the bracket stops halving.
  double x_prev = lo, f_prev = f_lo, x_last = hi, f_last = f_hi;
  double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  double best_f = std::min(std::abs(f_lo), std::abs(f_hi));
  double width_two_ago = hi - lo;
  for (int it = 1; it <= config.max_iterations; ++it) {
    const double width = hi - lo;
    double x = x_last - f_last * (x_last - x_prev) / (f_last - f_prev);
    const bool stalled = (it % 2 == 0) && width > 0.5 * width_two_ago;
    if (!std::isfinite(x) || x <= lo || x >= hi || stalled) x = 0.5 * (lo + hi);
    if (it % 2 == 0) width_two_ago = width;

    const double fx = F(x);
    if (std::abs(fx) < best_f) {
      best = x;
      best_f = std::abs(fx);
    }
    if (best_f <= config.tolerance) return {best, best_f, it};
    if ((fx > 0.0) == (f_lo > 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    x_prev = x_last;
    f_prev = f_last;
    x_last = x;
    f_last = fx;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) return {best, best_f, it};
  }
  throw Error(ErrorKind::NoConvergence, "alpha solve exhausted its iteration budget");
}

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::Example1: return "example1";
    case CaseId::Example2: return "example2";
    case CaseId::Example3: return "example3";
  }
  return "unknown";
}

CaseId case_id_from_string(std::string_view name) {
  if (name == "example1") return CaseId::Example1;
  if (name == "example2") return CaseId::Example2;
  if (name == "example3") return CaseId::Example3;
  throw Error(ErrorKind::InvalidConfig, "unknown case '" + std::string(name) + "'");
}

int case_dimension(CaseId id) { return id == CaseId::Example3 ? 2 : 1; }

std::function<double(double)> alpha_map(CaseId id, int quadrature_points) {
  switch (id) {
    case CaseId::Example1:
      return [quadrature_points](double alpha) {
        const double s = integrate_unit_interval(
            [alpha](double x) { return std::pow(example1_w(alpha, x), 2); }, quadrature_points);
        return std::pow(s, 0.5);
      };
    case CaseId::Example2:
      return [quadrature_points](double alpha) {
        const double s = integrate_unit_interval(
            [alpha](double x) { return std::pow(example2_w(alpha, x), 2); }, quadrature_points);
        return std::pow(s, -1.0 / 3.0);
      };
    case CaseId::Example3:
      return [quadrature_points](double alpha) {
        const double s = integrate_unit_square(
            [alpha](double x, double y) { return std::pow(example3_w(alpha, x, y), 2); }, quadrature_points);
        return std::pow(s, 2.0);
      };
  }
  throw Error(ErrorKind::InvalidConfig, "unknown case");
}

AlphaSolveConfig default_alpha_config(CaseId id) {
  AlphaSolveConfig cfg;
  switch (id) {
    case CaseId::Example1: cfg.lower = 0.1; cfg.upper = 0.3; break;
    case CaseId::Example2: cfg.lower = 0.1; cfg.upper = 0.12; break;
    case CaseId::Example3: cfg.lower = 0.045; cfg.upper = 0.055; break;
  }
  return cfg;
}

ManufacturedCase make_case(CaseId id) {
  ManufacturedCase c;
  c.id = id;
  c.alpha_config = default_alpha_config(id);
  c.G = alpha_map(id, c.alpha_config.quadrature_points);
  c.alpha = solve_alpha(c.G, c.alpha_config).alpha;
  const double alpha = c.alpha;

  switch (id) {
    case CaseId::Example1: {
      c.dim = 1;
      c.gamma = 0.5;
      c.C = -1.0;
      c.C1 = example1_C1(alpha);
      c.C2 = 0.0;
      c.validity_horizon = std::numeric_limits<double>::infinity();
      c.default_t_end = 10.0;
      c.notes = "gamma = 1/2: a(u) = (int u^2)^{1/2} and l(t) = 1/(t+1) both require it";
      c.g = [](const Point& p) { return -p[0] * p[0]; };
      c.k = [alpha](const Point& p) { return example1_w(alpha, p[0]); };
      break;
    }
    case CaseId::Example2: {
      c.dim = 1;
      c.gamma = -1.0 / 3.0;
      c.C = 1.0;
      c.C1 = example2_sine_coefficient(alpha) - std::sqrt(alpha) * kSqrt32 / (alpha + 1.0);
      c.C2 = 0.0;
      c.validity_horizon = 1.0;
      c.default_t_end = 2.0;
      c.notes = "forcing e^x sqrt([1-t]_+); solution extinct for t >= 1";
      c.g = [](const Point& p) { return -kSqrt32 * std::exp(p[0]); };
      c.k = [alpha](const Point& p) { return example2_w(alpha, p[0]); };
      break;
    }
    case CaseId::Example3: {
      c.dim = 2;
      c.gamma = 2.0;
      c.C = -0.25;
      c.C3 = kExample3Amplitude;
      c.lambda = pi * pi * alpha;
      c.validity_horizon = std::numeric_limits<double>::infinity();
      c.default_t_end = 1.0;
      c.notes = "profile sin(pi x) sin(pi y); C = -1/4 fixes u0";
      c.g = [](const Point&) { return 0.0; };
      c.k = [alpha](const Point& p) { return example3_w(alpha, p[0], p[1]); };
      break;
    }
  }

  const double gamma = c.gamma, C = c.C;
  c.l = [gamma, C](double t) { return l_of_t(gamma, C, t); };
  // The closed forms vanish on the boundary analytically; pin the trace to
  // exact zero there so rounding in sin(1/sqrt(alpha)) etc. cannot leak in.
  const auto k = c.k;
  const int dim = c.dim;
  c.k = [k, dim](const Point& p) { return on_boundary(dim, p) ? 0.0 : k(p); };
  const auto k_pinned = c.k;
  const auto l = c.l;
  const auto g = c.g;
  c.u = [k_pinned, l](const Point& p, double t) { return k_pinned(p) * l(t); };
  c.u0 = [k_pinned, l](const Point& p) { return k_pinned(p) * l(0.0); };
  c.f = [g, l, gamma](const Point& p, double t) {
    const double lt = l(t);
    if (lt == 0.0) return 0.0;
    const double gx = g(p);
    return gx == 0.0 ? 0.0 : -gx * std::pow(lt, 2.0 * gamma + 1.0);
  };
  return c;
}

ResidualReport verify_case(const ManufacturedCase& c) {
  ResidualReport report;
  report.fixed_point_residual = c.fixed_point_residual();

  // Analytic extension (no boundary pinning) for stencils and the raw trace.
  const auto raw_u = [&c](double x, double y, double t) {
    switch (c.id) {
      case CaseId::Example1: return example1_w(c.alpha, x) * c.l(t);
      case CaseId::Example2: return example2_w(c.alpha, x) * c.l(t);
      case CaseId::Example3: return example3_w(c.alpha, x, y) * c.l(t);
    }
    return 0.0;
  };

  const int nx = c.dim == 1 ? 50 : 20;
  const int nt = c.dim == 1 ? 50 : 10;
  const double t_max = std::isfinite(c.validity_horizon) ? std::min(c.default_t_end, 0.95 * c.validity_horizon)
                                                         : c.default_t_end;
  const double hx = 2e-3, ht = 1e-3;
  const int quad_points = 48;

  for (int j = 0; j < nt; ++j) {
    const double t = t_max * j / (nt - 1);
    const double s = c.dim == 1
                         ? integrate_unit_interval([&](double x) { return std::pow(raw_u(x, 0.0, t), 2); }, quad_points)
                         : integrate_unit_square([&](double x, double y) { return std::pow(raw_u(x, y, t), 2); },
                                                 quad_points);
    const double a = std::pow(s, c.gamma);
    report.max_coefficient_mismatch =
        std::max(report.max_coefficient_mismatch, std::abs(a - c.alpha * std::pow(c.l(t), 2.0 * c.gamma)));

    const auto d_dt = [&](double x, double y) {
      return (-raw_u(x, y, t + 2 * ht) + 8 * raw_u(x, y, t + ht) - 8 * raw_u(x, y, t - ht) +
              raw_u(x, y, t - 2 * ht)) /
             (12 * ht);
    };
    const auto second = [&](double um2, double um1, double u0, double up1, double up2) {
      return (-up2 + 16 * up1 - 30 * u0 + 16 * um1 - um2) / (12 * hx * hx);
    };
    const auto laplacian = [&](double x, double y) {
      double lap = second(raw_u(x - 2 * hx, y, t), raw_u(x - hx, y, t), raw_u(x, y, t), raw_u(x + hx, y, t),
                          raw_u(x + 2 * hx, y, t));
      if (c.dim == 2)
        lap += second(raw_u(x, y - 2 * hx, t), raw_u(x, y - hx, t), raw_u(x, y, t), raw_u(x, y + hx, t),
                      raw_u(x, y + 2 * hx, t));
      return lap;
    };

    const int ny = c.dim == 1 ? 1 : nx;
    for (int iy = 0; iy < ny; ++iy) {
      const double y = c.dim == 1 ? 0.0 : (iy + 1.0) / (nx + 1.0);
      for (int ix = 0; ix < nx; ++ix) {
        const double x = (ix + 1.0) / (nx + 1.0);
        const double r = d_dt(x, y) - a * laplacian(x, y) - c.f({x, y}, t);
        report.max_pde_residual = std::max(report.max_pde_residual, std::abs(r));
        ++report.samples;
      }
    }

    // Boundary samples.
    std::vector<Point> boundary;
    for (int i = 0; i <= nx; ++i) {
      const double s_i = static_cast<double>(i) / nx;
      if (c.dim == 1) {
        boundary = {{0.0, 0.0}, {1.0, 0.0}};
        break;
      }
      boundary.push_back({s_i, 0.0});
      boundary.push_back({s_i, 1.0});
      boundary.push_back({0.0, s_i});
      boundary.push_back({1.0, s_i});
    }
    for (const Point& p : boundary) {
      report.max_boundary_trace = std::max(report.max_boundary_trace, std::abs(c.u(p, t)));
      report.max_closed_form_boundary =
          std::max(report.max_closed_form_boundary, std::abs(raw_u(p[0], p[1], t)));
    }
  }

  report.initial_integral =
      c.dim == 1 ? integrate_unit_interval([&](double x) { return c.u0({x, 0.0}); }, quad_points)
                 : integrate_unit_square([&](double x, double y) { return c.u0({x, y}); }, quad_points);
  return report;
}

}  // namespace nlcn
