#pragma once

#include <stdexcept>
#include <string>

namespace freemult {

enum class ErrorKind {
  InvalidArgument,
  SpecParse,
  OutsideDomain,
  NonzeroConstantTerm,
  ZeroConstantTerm,
  ZeroDerivative,
  WrongVanishingOrder,
  DivergentLimit,
  NoSignChange,
  RootBracketFailure,
  ZeroMean,
  EtaVanishes,
  HaarLike,
  MeanMismatch,
  NonPositiveMeanBranch,
  BooleanPowerOutOfRange,
  MaxIterations,
  NonConvergence,
  PathEscapedDomain,
  EmptyLevel,
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

// Errors caused by malformed input rather than numerical trouble.
[[nodiscard]] bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace freemult
