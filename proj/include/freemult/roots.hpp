#pragma once

#include <functional>

namespace freemult {

using RealFunction = std::function<double(double)>;

/// Root of g in [lo, hi] by bisection, tightened by Newton steps when a
/// derivative is supplied. Stops once |g| < tol or the bracket collapses to
/// a few ulps. Throws NoSignChange unless g(lo) and g(hi) differ in sign.
[[nodiscard]] double solve_monotone(const RealFunction& g, double lo, double hi, double tol = 1e-12,
                                    const RealFunction& derivative = {});

}  // namespace freemult
