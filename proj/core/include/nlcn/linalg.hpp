#pragma once

#include <cstddef>
#include <string_view>

#include "nlcn/sparse.hpp"

namespace nlcn {

enum class SolverMethod { ConjugateGradient, DirectBanded };

std::string_view to_string(SolverMethod method);
SolverMethod solver_method_from_string(std::string_view name);

struct SolverConfig {
  double tolerance = 1e-12;  ///< relative residual bound ||Ax - b|| <= tol ||b||
  std::size_t max_iterations = 0;  ///< 0 selects 10 * (number of free unknowns)
  SolverMethod method = SolverMethod::ConjugateGradient;

  void validate() const;
};

struct SolveStats {
  std::size_t iterations = 0;
  double relative_residual = 0.0;  ///< recomputed from the returned solution
};

/// Solves A x = b on the free nodes of b's space (rows and columns of
/// boundary nodes are eliminated; boundary entries of x are zero).
///
/// Conjugate gradient uses Jacobi preconditioning. DirectBanded runs a band
/// Cholesky factorization and is restricted to 1D spaces, whose x-ordered
/// numbering keeps the bandwidth equal to the degree.
FieldVector solve_spd(const SparseSymMatrix& A, const FieldVector& b, const SolverConfig& config,
                      SolveStats* stats = nullptr);

/// ||A x - b||_2 / ||b||_2 over free nodes (0 when b vanishes there and x does too).
double relative_residual(const SparseSymMatrix& A, const FieldVector& x, const FieldVector& b);

}  // namespace nlcn
