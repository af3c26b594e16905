#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace freemult {

using DiskEvaluator = std::function<std::complex<double>(std::complex<double>)>;

/// Radii 1 - 2^-m for m = m0..m1, combined by repeated Richardson steps.
struct RadialSchedule {
  int m0 = 4;
  int m1 = 16;
  int extrapolation_order = 3;

  [[nodiscard]] std::vector<double> radii() const;
  void validate() const;
};

struct RadialLimit {
  std::complex<double> value;
  double error_estimate = 0.0;
  bool extrapolated = true;
};

/// Boundary value of f along the ray at angle.
///
/// When `bound` is given, an extrapolant whose modulus exceeds it is replaced
/// by the last raw sample. Throws DivergentLimit when the extrapolants keep
/// growing and end at least ten times larger than they started.
[[nodiscard]] RadialLimit radial_limit(const DiskEvaluator& f, double angle, const RadialSchedule& schedule = {},
                                       std::optional<double> bound = std::nullopt);

}  // namespace freemult
