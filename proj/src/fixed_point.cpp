#include "freemult/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "freemult/errors.hpp"

namespace freemult {

namespace {

using cplx = std::complex<double>;

bool finite(cplx w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

std::string trail_text(const std::vector<double>& trail) {
  std::ostringstream os;
  os << "residual trail:";
  const std::size_t start = trail.size() > 8 ? trail.size() - 8 : 0;
  for (std::size_t i = start; i < trail.size(); ++i) os << ' ' << trail[i];
  return os.str();
}

}  // namespace

FixedPointResult solve_fixed_point(const ComplexMap& F, cplx w0, const FixedPointOptions& opt) {
  const double slack = opt.radius > 0.0 ? opt.radius * (1.0 + 1e-12) : 0.0;
  auto admissible = [&](cplx w) { return finite(w) && (opt.radius <= 0.0 || std::abs(w) <= slack); };

  FixedPointResult out;
  cplx w = w0;
  cplx fw = F(w);
  double r = std::abs(fw - w);
  double alpha = opt.alpha;
  double best = r;
  int since_best = 0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int it = 0; it < opt.max_iter; ++it) {
    if (opt.keep_trail) out.trail.push_back(r);
    const double floor = 64.0 * eps * (std::abs(w) + std::abs(fw));
    if (r < opt.tol || r <= floor) {
      out.value = w;
      out.iterations = it;
      out.residual = r;
      return out;
    }

    bool stepped = false;
    if (opt.newton) {
      try {
        cplx d;
        if (opt.derivative) {
          d = opt.derivative(w);
        } else {
          const double h = 1e-7 * std::max(std::abs(w), 1e-3);
          d = (F(w + h) - F(w - h)) / (2.0 * h);
        }
        const cplx denom = d - 1.0;
        if (std::abs(denom) > 1e-14) {
          const cplx wn = w - (fw - w) / denom;
          if (admissible(wn)) {
            const cplx fn = F(wn);
            const double rn = std::abs(fn - wn);
            if (finite(fn) && rn < 0.5 * r) {
              w = wn;
              fw = fn;
              r = rn;
              stepped = true;
            }
          }
        }
      } catch (const Error&) {
      }
    }

    if (!stepped) {
      cplx wp = w + alpha * (fw - w);
      if (opt.radius > 0.0 && std::abs(wp) > opt.radius) wp *= opt.radius / std::abs(wp);
      const cplx fp = F(wp);
      const double rp = std::abs(fp - wp);
      if (!finite(fp)) throw Error(ErrorKind::NonConvergence, "iterate left the domain of the map");
      if (opt.adaptive_damping && rp > r && alpha > 1.0 / 1024.0) alpha *= 0.5;
      w = wp;
      fw = fp;
      r = rp;
    }

    if (r < best * (1.0 - 1e-3)) {
      best = r;
      since_best = 0;
    } else if (++since_best > 50 && r <= 1e4 * eps * (std::abs(w) + std::abs(fw))) {
      out.value = w;
      out.iterations = it + 1;
      out.residual = r;
      return out;
    } else if (since_best > 2000 && opt.adaptive_damping) {
      if (opt.keep_trail) out.trail.push_back(r);
      throw Error(ErrorKind::NonConvergence, "fixed-point iteration stalled; " + trail_text(out.trail));
    }
  }
  throw Error(ErrorKind::MaxIterations,
              "no fixed point after " + std::to_string(opt.max_iter) + " iterations, residual " + std::to_string(r));
}

}  // namespace freemult
