#include "nlcn/error.hpp"

namespace nlcn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidRange: return "invalid-range";
    case ErrorKind::InvalidCount: return "invalid-count";
    case ErrorKind::InvalidDegree: return "invalid-degree";
    case ErrorKind::NonFiniteForcing: return "non-finite-forcing";
    case ErrorKind::NonFiniteData: return "non-finite-data";
    case ErrorKind::SingularSystem: return "singular-system";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::NotSpd: return "not-spd";
    case ErrorKind::DegenerateCoefficient: return "degenerate-coefficient";
    case ErrorKind::IdenticalInputs: return "identical-inputs";
    case ErrorKind::GammaZero: return "gamma-zero";
    case ErrorKind::NonpositiveAlpha: return "nonpositive-alpha";
    case ErrorKind::LambdaOutOfRange: return "lambda-out-of-range";
    case ErrorKind::NoSignChange: return "no-sign-change";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::IoFailure: return "io-failure";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidRange:
    case ErrorKind::InvalidCount:
    case ErrorKind::InvalidDegree:
    case ErrorKind::InvalidConfig:
    case ErrorKind::GammaZero:
    case ErrorKind::LambdaOutOfRange:
    case ErrorKind::NonpositiveAlpha:
      return 2;
    case ErrorKind::IoFailure:
      return 4;
    default:
      return 3;
  }
}

}  // namespace nlcn
