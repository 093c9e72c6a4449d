#include "nlcn/nonlocal.hpp"

#include <cmath>
#include <string>

#include "nlcn/assembly.hpp"
#include "nlcn/error.hpp"

namespace nlcn {

void NonlocalCoefficient::validate() const {
  if (!std::isfinite(gamma)) throw Error(ErrorKind::InvalidConfig, "gamma must be finite");
  if (!(floor_m > 0.0)) throw Error(ErrorKind::InvalidConfig, "guard floor must be positive");
  if (!(ceil_M > floor_m)) throw Error(ErrorKind::InvalidConfig, "guard ceiling must exceed the floor");
}

double NonlocalCoefficient::from_energy(double s) const {
  if (!std::isfinite(s) || s < 0.0)
    throw Error(ErrorKind::NonFiniteData, "squared norm must be finite and nonnegative");
  if (gamma == 0.0) return 1.0;
  if (s == 0.0) {
    if (gamma < 0.0)
      throw Error(ErrorKind::DegenerateCoefficient, "a(u) is infinite: ||u|| = 0 with gamma < 0");
    if (strict_positivity)
      throw Error(ErrorKind::DegenerateCoefficient, "a(u) = 0: ||u|| = 0 with gamma > 0");
    return 0.0;
  }
  return std::pow(s, gamma);
}

std::string_view to_string(GuardStatus status) {
  switch (status) {
    case GuardStatus::Ok: return "ok";
    case GuardStatus::BelowFloor: return "below-floor";
    case GuardStatus::AboveCeiling: return "above-ceiling";
    case GuardStatus::Degenerate: return "degenerate";
  }
  return "unknown";
}

double evaluate(const NonlocalCoefficient& coeff, const FieldVector& U, const SparseSymMatrix& mass) {
  if (!U.all_finite()) throw Error(ErrorKind::NonFiniteData, "field is not finite");
  return coeff.from_energy(l2_norm_sq(U, mass));
}

GuardStatus check_guards(double value, const NonlocalCoefficient& coeff) {
  if (value < coeff.floor_m) return GuardStatus::BelowFloor;
  if (value > coeff.ceil_M) return GuardStatus::AboveCeiling;
  return GuardStatus::Ok;
}

double lipschitz_witness(const NonlocalCoefficient& coeff, const FieldVector& V, const FieldVector& W,
                         const SparseSymMatrix& mass) {
  const FieldVector diff = linear_combination(1.0, V, -1.0, W);
  const double dist = std::sqrt(l2_norm_sq(diff, mass));
  if (dist == 0.0) throw Error(ErrorKind::IdenticalInputs, "Lipschitz ratio needs V != W");
  return std::abs(evaluate(coeff, V, mass) - evaluate(coeff, W, mass)) / dist;
}

}  // namespace nlcn
