#include "freemult/errors.hpp"

namespace freemult {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SpecParse: return "SpecParse";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::ZeroDerivative: return "ZeroDerivative";
    case ErrorKind::WrongVanishingOrder: return "WrongVanishingOrder";
    case ErrorKind::DivergentLimit: return "DivergentLimit";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::RootBracketFailure: return "RootBracketFailure";
    case ErrorKind::ZeroMean: return "ZeroMean";
    case ErrorKind::EtaVanishes: return "EtaVanishes";
    case ErrorKind::HaarLike: return "HaarLike";
    case ErrorKind::MeanMismatch: return "MeanMismatch";
    case ErrorKind::NonPositiveMeanBranch: return "NonPositiveMeanBranch";
    case ErrorKind::BooleanPowerOutOfRange: return "BooleanPowerOutOfRange";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::PathEscapedDomain: return "PathEscapedDomain";
    case ErrorKind::EmptyLevel: return "EmptyLevel";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::SpecParse:
    case ErrorKind::OutsideDomain:
    case ErrorKind::BooleanPowerOutOfRange:
    case ErrorKind::MeanMismatch:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace freemult
