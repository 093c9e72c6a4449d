#pragma once

#include <string_view>

#include "nlcn/sparse.hpp"

namespace nlcn {

/// a(u) = (int u^2)^gamma together with the guard band [floor_m, ceil_M]
/// inside which the coefficient is treated as nondegenerate.
struct NonlocalCoefficient {
  double gamma = 0.0;
  double floor_m = 1e-12;
  double ceil_M = 1e12;
  /// Reject s = 0 for gamma > 0 (where a = 0 would degenerate the equation).
  bool strict_positivity = false;

  void validate() const;

  /// s^gamma for a given squared L2 norm s >= 0.
  [[nodiscard]] double from_energy(double s) const;
};

enum class GuardStatus { Ok, BelowFloor, AboveCeiling, Degenerate };

std::string_view to_string(GuardStatus status);

/// a(U) with s = U^T M U. Throws DegenerateCoefficient when s = 0 and
/// gamma < 0, or s = 0 and gamma > 0 under strict positivity.
double evaluate(const NonlocalCoefficient& coeff, const FieldVector& U, const SparseSymMatrix& mass);

/// Classifies a coefficient value against the guard band.
GuardStatus check_guards(double value, const NonlocalCoefficient& coeff);

/// |a(V) - a(W)| / ||V - W||_M. Throws IdenticalInputs when ||V - W||_M = 0.
double lipschitz_witness(const NonlocalCoefficient& coeff, const FieldVector& V, const FieldVector& W,
                         const SparseSymMatrix& mass);

}  // namespace nlcn
