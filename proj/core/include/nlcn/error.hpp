#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlcn {

enum class ErrorKind {
  InvalidRange,
  InvalidCount,
  InvalidDegree,
  NonFiniteForcing,
  NonFiniteData,
  SingularSystem,
  DimensionMismatch,
  NoConvergence,
  NotSpd,
  DegenerateCoefficient,
  IdenticalInputs,
  GammaZero,
  NonpositiveAlpha,
  LambdaOutOfRange,
  NoSignChange,
  InvalidConfig,
  IoFailure,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process exit code for a failure of the given kind
/// (2 config, 3 numerical, 4 io).
int exit_code_for(ErrorKind kind);

}  // namespace nlcn
