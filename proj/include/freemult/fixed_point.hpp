#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace freemult {

using ComplexMap = std::function<std::complex<double>(std::complex<double>)>;

struct FixedPointOptions {
  double tol = 1e-13;
  int max_iter = 100000;
  // Iterates must satisfy |w| <= radius; a nonpositive radius disables the check.
  double radius = 0.0;
  // Relaxation w <- w + alpha (F(w) - w); halved on oscillation when adaptive.
  double alpha = 1.0;
  bool adaptive_damping = false;
  bool newton = true;
  // Derivative of F; a central difference is used when empty.
  std::function<std::complex<double>(std::complex<double>)> derivative;
  bool keep_trail = false;
};

struct FixedPointResult {
  std::complex<double> value;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> trail;
};

/// Solves F(w) = w from w0.
///
/// Plain relaxation steps are interleaved with Newton steps on F(w) - w; a
/// Newton step is kept only when it halves |F(w) - w| without leaving the
/// admissible disk.
/// Throws MaxIterations (or NonConvergence when the residual trail stalls
/// above tolerance under damping).
[[nodiscard]] FixedPointResult solve_fixed_point(const ComplexMap& F, std::complex<double> w0,
                                                 const FixedPointOptions& options = {});

}  // namespace freemult
