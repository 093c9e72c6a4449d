#include "nlcn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nlcn/error.hpp"

namespace nlcn {

namespace {

// Free-node restriction of a symmetric matrix, kept in CSR form.
struct ReducedSystem {
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  std::vector<double> rhs;
  std::vector<std::size_t> to_full;

  [[nodiscard]] std::size_t size() const { return to_full.size(); }

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    for (std::size_t i = 0; i < size(); ++i) {
      double s = 0.0;
      for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * x[col_idx[p]];
      y[i] = s;
    }
  }
};

std::vector<std::size_t> free_nodes_of(const FieldVector& b) {
  if (b.space) return b.space->free_node_indices();
  std::vector<std::size_t> all(b.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

ReducedSystem reduce(const SparseSymMatrix& A, const FieldVector& b) {
  if (A.rows() != b.size())
    throw Error(ErrorKind::DimensionMismatch,
                "matrix has " + std::to_string(A.rows()) + " rows, vector " + std::to_string(b.size()));
  ReducedSystem sys;
  sys.to_full = free_nodes_of(b);
  std::vector<std::ptrdiff_t> to_reduced(A.rows(), -1);
  for (std::size_t i = 0; i < sys.to_full.size(); ++i)
    to_reduced[sys.to_full[i]] = static_cast<std::ptrdiff_t>(i);
  const auto& rp = A.row_ptr();
  const auto& ci = A.col_idx();
  const auto& va = A.values();
  for (std::size_t full_i : sys.to_full) {
    for (std::size_t p = rp[full_i]; p < rp[full_i + 1]; ++p) {
      const auto j = to_reduced[ci[p]];
      if (j < 0) continue;
      sys.col_idx.push_back(static_cast<std::size_t>(j));
      sys.values.push_back(va[p]);
    }
    sys.row_ptr.push_back(sys.col_idx.size());
    sys.rhs.push_back(b.values[full_i]);
  }
  return sys;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double reduced_residual(const ReducedSystem& sys, const std::vector<double>& x) {
  std::vector<double> ax(sys.size());
  sys.multiply(x, ax);
  double s = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) s += (sys.rhs[i] - ax[i]) * (sys.rhs[i] - ax[i]);
  return std::sqrt(s);
}

// Preconditioned CG; returns iterations used. Throws on nonpositive curvature.
std::size_t conjugate_gradient(const ReducedSystem& sys, std::vector<double>& x, double target,
                               std::size_t budget) {
  const std::size_t n = sys.size();
  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t p = sys.row_ptr[i]; p < sys.row_ptr[i + 1]; ++p)
      if (sys.col_idx[p] == i) d = sys.values[p];
    if (!(d > 0.0))
      throw Error(ErrorKind::NotSpd, "nonpositive diagonal entry at free row " + std::to_string(i));
    inv_diag[i] = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  sys.multiply(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = sys.rhs[i] - ap[i];
  if (norm2(r) <= target) return 0;
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);

  for (std::size_t it = 1; it <= budget; ++it) {
    sys.multiply(p, ap);
    const double curvature = dot(p, ap);
    if (!(curvature > 0.0))
      throw Error(ErrorKind::NotSpd, "nonpositive curvature p^T A p = " + std::to_string(curvature) +
                                         " at iteration " + std::to_string(it));
    const double step = rz / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    if (norm2(r) <= target) return it;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return budget + 1;
}

void banded_cholesky_solve(const ReducedSystem& sys, std::vector<double>& x) {
  const std::size_t n = sys.size();
  std::size_t bw = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = sys.row_ptr[i]; p < sys.row_ptr[i + 1]; ++p)
      if (sys.col_idx[p] < i) bw = std::max(bw, i - sys.col_idx[p]);

  // band[i][bw + j - i] holds L(i, j) for i - bw <= j <= i.
  std::vector<double> band(n * (bw + 1), 0.0);
  const auto at = [&](std::size_t i, std::size_t j) -> double& { return band[i * (bw + 1) + bw + j - i]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = sys.row_ptr[i]; p < sys.row_ptr[i + 1]; ++p)
      if (sys.col_idx[p] <= i) at(i, sys.col_idx[p]) = sys.values[p];

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = j > bw ? j - bw : 0;
    double d = at(j, j);
    for (std::size_t k = lo; k < j; ++k) d -= at(j, k) * at(j, k);
    if (!(d > 0.0))
      throw Error(ErrorKind::NotSpd, "nonpositive pivot in band Cholesky at free row " + std::to_string(j));
    const double ljj = std::sqrt(d);
    at(j, j) = ljj;
    for (std::size_t i = j + 1; i < std::min(n, j + bw + 1); ++i) {
      const std::size_t lo_i = i > bw ? i - bw : 0;
      double s = at(i, j);
      for (std::size_t k = std::max(lo, lo_i); k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / ljj;
    }
  }

  x = sys.rhs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > bw ? i - bw : 0;
    for (std::size_t k = lo; k < i; ++k) x[i] -= at(i, k) * x[k];
    x[i] /= at(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < std::min(n, ii + bw + 1); ++k) x[ii] -= at(k, ii) * x[k];
    x[ii] /= at(ii, ii);
  }
}

}  // namespace

std::string_view to_string(SolverMethod method) {
  return method == SolverMethod::ConjugateGradient ? "cg" : "banded";
}

SolverMethod solver_method_from_string(std::string_view name) {
  if (name == "cg" || name == "conjugate-gradient") return SolverMethod::ConjugateGradient;
  if (name == "banded" || name == "direct-banded") return SolverMethod::DirectBanded;
  throw Error(ErrorKind::InvalidConfig, "unknown solver method '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidConfig, "solver tolerance must be positive");
}

FieldVector solve_spd(const SparseSymMatrix& A, const FieldVector& b, const SolverConfig& config,
                      SolveStats* stats) {
  config.validate();
  if (!b.all_finite()) throw Error(ErrorKind::NonFiniteData, "right-hand side is not finite");
  const ReducedSystem sys = reduce(A, b);
  if (sys.size() == 0) throw Error(ErrorKind::SingularSystem, "no free unknowns");

  std::vector<double> x(sys.size(), 0.0);
  const double bnorm = norm2(sys.rhs);
  std::size_t iterations = 0;

  if (bnorm > 0.0) {
    if (config.method == SolverMethod::DirectBanded) {
      if (b.space && b.space->dim() != 1)
        throw Error(ErrorKind::InvalidConfig, "direct-banded solver is only valid for 1D orderings");
      banded_cholesky_solve(sys, x);
    } else {
      const std::size_t budget = config.max_iterations ? config.max_iterations : 10 * sys.size();
      const double target = config.tolerance * bnorm;
      // Restart from the current iterate if rounding lets the recursive
      // residual drift below target while the true one has not.
      std::size_t remaining = budget;
      for (int attempt = 0; attempt < 3 && remaining > 0; ++attempt) {
        const std::size_t used = conjugate_gradient(sys, x, target, remaining);
        if (used > remaining) {
          iterations += remaining;
          break;
        }
        iterations += used;
        remaining -= used;
        if (reduced_residual(sys, x) <= target) break;
      }
    }
  }

  const double rel = bnorm > 0.0 ? reduced_residual(sys, x) / bnorm : 0.0;
  if (stats) *stats = {iterations, rel};
  if (bnorm > 0.0 && !(rel <= config.tolerance))
    throw Error(ErrorKind::NoConvergence,
                "relative residual " + std::to_string(rel) + " above tolerance after " +
                    std::to_string(iterations) + " iterations");

  FieldVector out(b.space, std::vector<double>(b.size(), 0.0));
  for (std::size_t i = 0; i < sys.size(); ++i) out.values[sys.to_full[i]] = x[i];
  return out;
}

double relative_residual(const SparseSymMatrix& A, const FieldVector& x, const FieldVector& b) {
  const ReducedSystem sys = reduce(A, b);
  std::vector<double> xr(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) xr[i] = x.values[sys.to_full[i]];
  const double bnorm = norm2(sys.rhs);
  const double res = reduced_residual(sys, xr);
  return bnorm > 0.0 ? res / bnorm : res;
}

}  // namespace nlcn
