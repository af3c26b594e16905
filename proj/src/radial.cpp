#include "freemult/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freemult/errors.hpp"

namespace freemult {

std::vector<double> RadialSchedule::radii() const {
  validate();
  std::vector<double> r;
  for (int m = m0; m <= m1; ++m) r.push_back(1.0 - std::ldexp(1.0, -m));
  return r;
}

void RadialSchedule::validate() const {
  if (m0 < 1 || m1 > 52 || m1 - m0 + 1 < 3)
    throw Error(ErrorKind::InvalidArgument, "radial schedule needs at least 3 radii with 1 <= m0 < m1 <= 52");
  if (extrapolation_order < 1 || extrapolation_order > m1 - m0 + 1)
    throw Error(ErrorKind::InvalidArgument, "extrapolation order out of range");
}

RadialLimit radial_limit(const DiskEvaluator& f, double angle, const RadialSchedule& schedule,
                         std::optional<double> bound) {
  using cplx = std::complex<double>;
  const auto radii = schedule.radii();
  const cplx dir = std::polar(1.0, angle);
  std::vector<cplx> raw;
  raw.reserve(radii.size());
  for (double r : radii) raw.push_back(f(r * dir));

  // Neville table in h = 1 - r with ratio 2: each level removes one power of h.
  const int p = schedule.extrapolation_order;
  std::vector<cplx> col = raw;
  for (int level = 1; level < p; ++level) {
    const double factor = std::ldexp(1.0, level);
    std::vector<cplx> next;
    for (std::size_t i = 0; i + 1 < col.size(); ++i) next.push_back((factor * col[i + 1] - col[i]) / (factor - 1.0));
    col = std::move(next);
  }

  bool growing = col.size() >= 2;
  for (std::size_t i = 1; i < col.size(); ++i)
    if (!(std::abs(col[i]) > std::abs(col[i - 1]))) growing = false;
  if (growing && std::abs(col.back()) >= 10.0 * std::abs(col.front()) && std::abs(col.back()) > 1.0)
    throw Error(ErrorKind::DivergentLimit, "radial values blow up at angle " + std::to_string(angle));

  RadialLimit out;
  const cplx last_raw = raw.back();
  if (col.size() < 2) {
    out.value = col.back();
    out.error_estimate = std::abs(col.back() - last_raw);
  } else {
    const std::size_t n = col.size();
    const double d_last = std::abs(col[n - 1] - col[n - 2]);
    const double d_prev = n >= 3 ? std::abs(col[n - 2] - col[n - 3]) : d_last;
    const double floor = 1e-12 * (1.0 + std::abs(col[n - 1]));
    if (d_last <= d_prev || d_last <= floor) {
      out.value = col[n - 1];
      out.error_estimate = d_last;
    } else {
      out.value = last_raw;
      out.error_estimate = std::max(d_last, std::abs(col[n - 1] - last_raw));
      out.extrapolated = false;
    }
  }
  if (bound && std::abs(out.value) > *bound) {
    out.error_estimate = std::max(out.error_estimate, std::abs(out.value - last_raw));
    out.value = last_raw;
    out.extrapolated = false;
  }
  return out;
}

}  // namespace freemult
