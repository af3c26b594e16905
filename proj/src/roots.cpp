#include "freemult/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freemult/errors.hpp"

namespace freemult {

double solve_monotone(const RealFunction& g, double lo, double hi, double tol, const RealFunction& derivative) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "empty bracket");
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (std::isnan(glo) || std::isnan(ghi) || (glo > 0.0) == (ghi > 0.0))
    throw Error(ErrorKind::NoSignChange,
                "g(" + std::to_string(lo) + ") and g(" + std::to_string(hi) + ") have the same sign");
  const bool rising = glo < 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 2000; ++iter) {
    const double gx = g(x);
    if (std::abs(gx) < tol) return x;
    if ((gx < 0.0) == rising)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 4.0 * eps * std::max({std::abs(lo), std::abs(hi), 1e-300})) return 0.5 * (lo + hi);

    double next = 0.5 * (lo + hi);
    if (derivative) {
      const double d = derivative(x);
      if (d != 0.0 && std::isfinite(d)) {
        const double xn = x - gx / d;
        if (xn > lo && xn < hi) next = xn;
      }
    }
    x = next;
  }
  return x;
}

}  // namespace freemult
