#include "freemult/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "freemult/errors.hpp"
#include "freemult/output.hpp"
#include "freemult/parallel.hpp"
#include "freemult/roots.hpp"
#include "freemult/semigroups.hpp"

namespace freemult {

using std::numbers::pi;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kRIn = 2.0 - kSqrt3;
const double kROut = 2.0 + kSqrt3;

double sin_half_sq(double phi) {
  const double s = std::sin(0.5 * phi);
  return s * s;
}

// |1 - r e^{i phi}|^2 without cancellation.
double dist_one_sq(double r, double phi) { return (1.0 - r) * (1.0 - r) + 4.0 * r * sin_half_sq(phi); }

// ln|Phi_t(e^{s + i phi})| / (1 - e^s), continuous at s = 0.
double slice_quotient(double t, double phi, double s) {
  const double r = std::exp(s);
  const double lead = s == 0.0 ? -1.0 : s / -std::expm1(s);
  return lead + 0.5 * t * (1.0 + r) / dist_one_sq(r, phi);
}

double boundary_log_radius(double t, double phi) {
  phi = std::abs(phi);
  if (phi > pi) throw Error(ErrorKind::InvalidArgument, "boundary angle must lie in [-pi, pi]");
  const double at_one = slice_quotient(t, phi, 0.0);
  if (at_one <= 0.0) {
    if (at_one > -1e-12) return 0.0;
    throw Error(ErrorKind::RootBracketFailure, "no boundary point at angle " + std::to_string(phi));
  }
  return solve_monotone([&](double s) { return slice_quotient(t, phi, s); }, -t - 2.0, 0.0, 0.0);
}

double image_angle(double t, double r, double phi) { return phi + t * r * std::sin(phi) / dist_one_sq(r, phi); }

double arc_end(double t) { return t < 4.0 ? std::acos(1.0 - 0.5 * t) : pi; }

// theta - sin(theta), accurate for small theta.
double theta_minus_sin(double th) {
  if (std::abs(th) > 0.1) return th - std::sin(th);
  const double t2 = th * th;
  return th * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0 * (1.0 - t2 / 110.0))));
}

// 2 - (cos(theta) + sin(theta)/theta).
double two_minus_b(double th) {
  if (th == 0.0) return 0.0;
  return 2.0 * sin_half_sq(th) + theta_minus_sin(th) / th;
}

double log_phi_lambda(double r, double theta) { return std::log(r) + (r * r - 1.0) / dist_one_sq(r, theta); }

bool point_in_polygon(const std::vector<cplx>& poly, cplx p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const cplx a = poly[i];
    const cplx b = poly[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double x = (b.real() - a.real()) * (p.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
      if (p.real() < x) inside = !inside;
    }
  }
  return inside;
}

double halton(std::size_t index, std::size_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace

AngleGrid uniform_circle_grid(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  AngleGrid g;
  for (std::size_t j = 0; j < n; ++j) g.abscissae.push_back(-pi + 2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
  g.weights.assign(n, 2.0 * pi / static_cast<double>(n));
  return g;
}

AngleGrid graded_arc_grid(double theta_max, std::size_t n) {
  if (n < 2 || !(theta_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "graded grid needs n >= 2 and a positive arc");
  AngleGrid g;
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
    g.abscissae.push_back(-theta_max * std::cos(phi));
    g.weights.push_back(theta_max * std::sin(phi) * pi / static_cast<double>(n));
  }
  return g;
}

DensityTable poisson_density(const CircleMeasure& mu, const AngleGrid& grid, const RadialSchedule& schedule) {
  schedule.validate();
  DensityTable table;
  table.abscissae = grid.abscissae;
  table.weights = grid.weights;
  auto herglotz = [&](cplx z) {
    const cplx e = eta_eval(mu, z);
    return (1.0 + e) / (1.0 - e);
  };
  table.values = parallel_map<double>(grid.abscissae.size(), [&](std::size_t i) {
    try {
      return radial_limit(herglotz, -grid.abscissae[i], schedule).value.real() / (2.0 * pi);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivergentLimit) throw;
      return static_cast<double>(INFINITY);
    }
  });
  table.update_mass();
  table.note = "boundary density by radial limits, indexed by the point's own angle";
  return table;
}

DensityTable poisson_density(const CircleMeasure& mu, const std::vector<double>& angles, const RadialSchedule& schedule) {
  AngleGrid g;
  g.abscissae = angles;
  const std::size_t n = angles.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = i == 0 ? angles[n - 1] - 2.0 * pi : angles[i - 1];
    const double next = i + 1 == n ? angles[0] + 2.0 * pi : angles[i + 1];
    g.weights.push_back(0.5 * (next - prev));
  }
  return poisson_density(mu, g, schedule);
}

// ---- circle normal law ----

Arc circle_normal_support(double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  if (t >= 4.0) return {-pi, pi, true};
  const double m = 0.5 * std::sqrt(t * (4.0 - t)) + std::acos(1.0 - 0.5 * t);
  return {-m, m, false};
}

double circle_normal_x1(double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  // ln Phi_t(e^s) = s + (t/2)(1 + e^s)/(1 - e^s)
  auto g = [&](double s) { return s + 0.5 * t * (1.0 + std::exp(s)) / -std::expm1(s); };
  return std::exp(solve_monotone(g, -t - 2.0, -1e-12, 0.0));
}

double circle_normal_x2(double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  if (t <= 4.0) return -1.0;
  const double xmin = 0.5 * ((2.0 - t) + std::sqrt(t * t - 4.0 * t));
  return solve_monotone([&](double x) { return circle_phi(t, x).real() + 1.0; }, xmin, -1e-300, 0.0);
}

cplx circle_normal_z1(double t) { return 0.5 * (2.0 - t + std::sqrt(cplx(t * t - 4.0 * t))); }

cplx circle_normal_z2(double t) { return 0.5 * (2.0 - t - std::sqrt(cplx(t * t - 4.0 * t))); }

double circle_normal_theta1(double t) { return arc_end(t); }

double circle_boundary_radius(double t, double phi) { return std::exp(boundary_log_radius(t, phi)); }

double circle_image_angle(double t, double r, double phi) { return image_angle(t, r, phi); }

BoundaryCurve circle_normal_boundary(double t, std::size_t n) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  if (n < 16) throw Error(ErrorKind::InvalidArgument, "boundary needs at least 16 samples");
  BoundaryCurve c;
  c.t = t;
  c.x1 = circle_normal_x1(t);
  c.x2 = circle_normal_x2(t);
  c.z1 = circle_normal_z1(t);
  c.z2 = circle_normal_z2(t);
  if (t < 4.0) {
    // Largest angle whose radial slice still reaches the level at r = 1.
    c.traced_theta1 = solve_monotone([&](double phi) { return slice_quotient(t, phi, 0.0); }, 1e-8, pi, 0.0);
  } else {
    c.traced_theta1 = pi;
  }
  const double end = c.traced_theta1;
  c.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = end * 0.5 * (1.0 - std::cos(pi * static_cast<double>(j) / static_cast<double>(n - 1)));
    const double r = std::exp(boundary_log_radius(t, phi));
    const cplx z = std::polar(r, phi);
    c.samples[j] = {phi, r, z, circle_phi(t, z)};
  }
  const auto& last = c.samples.back();
  c.traced_image_end = image_angle(t, last.r, last.theta);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& s = c.samples[j];
    if (std::abs(std::abs(s.image) - 1.0) >= 1e-10) throw Error(ErrorKind::NonConvergence, "boundary sample misses the unit level");
    if (j > 0) {
      const auto& p = c.samples[j - 1];
      if (s.r < p.r - 1e-14 || std::abs(1.0 - s.z) < std::abs(1.0 - p.z) - 1e-14)
        throw Error(ErrorKind::NonConvergence, "boundary modulus is not monotone");
    }
  }
  return c;
}

double circle_normal_density_at(double t, double theta) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  double a = std::abs(std::remainder(theta, 2.0 * pi));
  const double end = arc_end(t);
  const double top = image_angle(t, std::exp(boundary_log_radius(t, end)), end);
  if (t < 4.0 && a >= top) return 0.0;
  a = std::min(a, top);
  if (a == 0.0) return -std::log(circle_normal_x1(t)) / (pi * t);
  auto g = [&](double phi) { return image_angle(t, std::exp(boundary_log_radius(t, phi)), phi) - a; };
  const double phi = solve_monotone(g, 0.0, end, 0.0);
  return -boundary_log_radius(t, phi) / (pi * t);
}

AngleGrid circle_normal_grid(double t, std::size_t n) {
  if (t <= 4.0) return graded_arc_grid(circle_normal_support(t).hi, n);
  return uniform_circle_grid(n);
}

DensityTable circle_normal_density(double t, const AngleGrid& grid, DensityRoute route, const RadialSchedule& schedule) {
  if (route == DensityRoute::Poisson) {
    auto table = poisson_density(CircleMeasure::normal(t), grid, schedule);
    table.note = "circle normal density by radial limits of eta";
    return table;
  }
  DensityTable table;
  table.abscissae = grid.abscissae;
  table.weights = grid.weights;
  table.values = parallel_map<double>(grid.abscissae.size(), [&](std::size_t i) { return circle_normal_density_at(t, grid.abscissae[i]); });
  table.update_mass();
  table.note = "circle normal density by boundary correspondence";
  return table;
}

// ---- half-line normal law ----

double halfline_theta0() {
  static const double value = solve_monotone([](double th) { return std::sin(th) - th * (1.0 - std::cos(th)); }, 0.5, pi, 0.0);
  return value;
}

double halfline_t1() { return kRIn * std::exp(-kSqrt3); }

double halfline_t2() { return kROut * std::exp(kSqrt3); }

double halfline_arg_f(double r, double theta) { return theta - 2.0 * r * std::sin(theta) / dist_one_sq(r, theta); }

double halfline_curve_theta(double r) {
  const double d = -(r - kRIn) * (r - kROut) / (2.0 * r);
  const double th0 = halfline_theta0();
  if (d <= 0.0) return 0.0;
  if (d >= 1.0) return th0;
  return solve_monotone([&](double th) { return two_minus_b(th) - d; }, 0.0, th0, 0.0);
}

BoundaryCurve halfline_gamma0(std::size_t n) {
  if (n < 16) throw Error(ErrorKind::InvalidArgument, "curve needs at least 16 samples");
  BoundaryCurve c;
  c.t = 2.0;
  c.theta0 = halfline_theta0();
  auto outer_root = [](double th) {
    const double b = 2.0 - two_minus_b(th);
    return b <= 1.0 ? 1.0 : b + std::sqrt((b - 1.0) * (b + 1.0));
  };
  std::vector<BoundarySample> inner;
  std::vector<BoundarySample> outer;
  for (std::size_t j = 1; j <= n; ++j) {
    const double th = c.theta0 * 0.5 * (1.0 - std::cos(pi * static_cast<double>(j) / static_cast<double>(n)));
    const double ro = outer_root(th);
    for (double r : {1.0 / ro, ro}) {
      const cplx z = std::polar(r, th);
      const cplx img = halfline_phi(2.0, z);
      if (std::abs(img.imag()) >= 1e-10 * std::max(1.0, std::abs(img)))
        throw Error(ErrorKind::NonConvergence, "curve sample has a non-real image");
      (r <= 1.0 ? inner : outer).push_back({th, r, z, img});
    }
  }
  c.samples = inner;
  for (auto it = outer.rbegin(); it != outer.rend(); ++it)
    if (it->r != 1.0 || it != outer.rbegin()) c.samples.push_back(*it);

  // r(theta) is even in theta; two Richardson steps in theta^2.
  const double h = 0.02;
  auto extrapolate = [&](auto&& rfun) {
    const double a0 = rfun(h);
    const double a1 = rfun(0.5 * h);
    const double a2 = rfun(0.25 * h);
    const double b0 = (4.0 * a1 - a0) / 3.0;
    const double b1 = (4.0 * a2 - a1) / 3.0;
    return (16.0 * b1 - b0) / 15.0;
  };
  c.endpoint_outer = extrapolate(outer_root);
  c.endpoint_inner = extrapolate([&](double th) { return 1.0 / outer_root(th); });
  c.t1 = halfline_phi(2.0, c.endpoint_inner).real();
  c.t2 = halfline_phi(2.0, c.endpoint_outer).real();
  return c;
}

double halfline_normal_density_at(double x) {
  const double t1 = halfline_t1();
  const double t2 = halfline_t2();
  if (!(x > t1 && x < t2)) return 0.0;
  const double lx = std::log(x);
  auto g = [&](double r) { return log_phi_lambda(r, halfline_curve_theta(r)) + lx; };
  const double r = solve_monotone(g, kRIn, kROut, 0.0);
  return halfline_curve_theta(r) / (2.0 * pi * x);
}

DensityTable halfline_normal_density(const std::vector<double>& xs) {
  DensityTable table;
  table.abscissae = xs;
  const std::size_t n = xs.size();
  table.weights.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double w = 0.5 * (xs[i + 1] - xs[i]);
    if (w < 0.0) throw Error(ErrorKind::InvalidArgument, "abscissae must increase");
    table.weights[i] += w;
    table.weights[i + 1] += w;
  }
  table.values = parallel_map<double>(n, [&](std::size_t i) { return halfline_normal_density_at(xs[i]); });
  table.update_mass();
  table.note = "half-line normal density at the point 1/Phi(w), w on the level-zero curve";
  return table;
}

DensityTable halfline_normal_density(std::size_t n) {
  const auto g = graded_arc_grid(1.0, n);
  const double c = 0.5 * (halfline_t1() + halfline_t2());
  const double h = 0.5 * (halfline_t2() - halfline_t1());
  DensityTable table;
  for (std::size_t i = 0; i < n; ++i) {
    table.abscissae.push_back(c + h * g.abscissae[i]);
    table.weights.push_back(h * g.weights[i]);
  }
  table.values = parallel_map<double>(n, [&](std::size_t i) { return halfline_normal_density_at(table.abscissae[i]); });
  table.update_mass();
  table.note = "half-line normal density at the point 1/Phi(w), w on the level-zero curve";
  return table;
}

double halfline_normal_moment(int power) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double x) { return std::pow(x, power) * halfline_normal_density_at(x); };
  return integrator.integrate(f, halfline_t1(), halfline_t2(), 1e-12);
}

// ---- level curves ----

namespace {

double log_modulus_phi(double t, double r, double theta) {
  return std::log(r) + 0.5 * t * (1.0 - r * r) / dist_one_sq(r, theta);
}

// theta_c with theta - cot(theta/2) = c.
double tangency_angle(double c) {
  return solve_monotone([&](double th) { return th - 1.0 / std::tan(0.5 * th) - c; }, 1e-12, pi, 0.0);
}

// Slices at fixed r, where theta -> log|Phi_t| is monotone on [0, pi]. The r-intervals that carry a
// root are located first and sampled with cosine clustering; each gives a loop (upper branch, then
// its mirror image).
std::vector<Polyline> trace_modulus_level(double t, double ll, double r_lo, double r_hi, std::size_t res) {
  auto g = [&](double r, double th) { return log_modulus_phi(t, r, th) - ll; };
  auto has_root = [&](double r) {
    const double a = g(r, 0.0);
    const double b = g(r, pi);
    return (a <= 0.0) != (b <= 0.0) || a == 0.0 || b == 0.0;
  };
  std::vector<Polyline> loops;
  const std::pair<double, double> ranges[2] = {{std::max(r_lo, 0.0), std::min(r_hi, 1.0)}, {std::max(r_lo, 1.0), r_hi}};
  for (const auto& [lo, hi] : ranges) {
    if (!(hi > lo)) continue;
    const std::size_t scan = 4 * res;
    auto at = [&](std::size_t i) { return lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(scan); };
    auto edge = [&](double in, double out) {
      for (int k = 0; k < 200 && std::abs(in - out) > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(in); ++k) {
        const double mid = 0.5 * (in + out);
        (has_root(mid) ? in : out) = mid;
      }
      return in;
    };
    std::size_t i = 0;
    while (i < scan) {
      if (!has_root(at(i))) {
        ++i;
        continue;
      }
      const std::size_t first = i;
      while (i < scan && has_root(at(i))) ++i;
      const double a = first == 0 ? at(0) : edge(at(first), at(first - 1));
      const double b = i == scan ? at(scan - 1) : edge(at(i - 1), at(i));
      Polyline upper;
      for (std::size_t j = 0; j < res; ++j) {
        const double r = a + (b - a) * 0.5 * (1.0 - std::cos(pi * static_cast<double>(j) / static_cast<double>(res - 1)));
        if (!has_root(r)) continue;
        upper.push_back({r, solve_monotone([&](double th) { return g(r, th); }, 0.0, pi, 0.0)});
      }
      Polyline loop = upper;
      for (auto it = upper.rbegin(); it != upper.rend(); ++it) loop.push_back({it->r, -it->theta});
      if (!loop.empty()) loops.push_back(std::move(loop));
    }
  }
  return loops;
}

Polyline trace_arg_level(double c, std::size_t res) {
  if (!(c < pi)) return {};
  const double lo = std::max(c, 0.0);
  const double hi = tangency_angle(c);
  if (!(hi > lo)) return {};
  Polyline inner;
  Polyline outer;
  for (std::size_t j = 1; j <= res; ++j) {
    const double th = lo + (hi - lo) * 0.5 * (1.0 - std::cos(pi * static_cast<double>(j) / static_cast<double>(res)));
    if (!(th > lo)) continue;
    double rin = 1.0;
    double rout = 1.0;
    if (j < res) {
      if (c >= 0.0) {
        auto g = [&](double r) { return halfline_arg_f(r, th) - c; };
        if (g(1.0) < 0.0) {
          rin = solve_monotone(g, 0.0, 1.0, 0.0);
          double big = 2.0;
          while (g(big) <= 0.0 && big < 1e300) big *= 2.0;
          rout = solve_monotone(g, 1.0, big, 0.0);
        }
      } else {
        const double b = std::cos(th) + std::sin(th) / (th - c);
        if (b > 1.0) {
          rout = b + std::sqrt((b - 1.0) * (b + 1.0));
          rin = 1.0 / rout;
        }
      }
    }
    inner.push_back({rin, th});
    if (j < res) outer.push_back({rout, th});
  }
  for (auto it = outer.rbegin(); it != outer.rend(); ++it) inner.push_back(*it);
  return inner;
}

std::vector<cplx> to_cartesian(const Polyline& p) {
  std::vector<cplx> out;
  for (const auto& q : p) out.push_back(std::polar(q.r, q.theta));
  return out;
}

bool in_window(const Window& w, const PolarPoint& p) {
  return p.r >= w.r_min && p.r <= w.r_max && p.theta >= w.theta_min && p.theta <= w.theta_max;
}

}  // namespace

double level_residual(LevelKind which, double t, double level, const PolarPoint& p) {
  if (which == LevelKind::ModulusPhi) return std::abs(std::exp(log_modulus_phi(t, p.r, p.theta)) - level);
  return std::abs(halfline_arg_f(p.r, p.theta) - level);
}

LevelCurveSet level_curves(LevelKind which, double t, const std::vector<double>& levels, const Window& window,
                           std::size_t resolution) {
  if (resolution < 8) throw Error(ErrorKind::InvalidArgument, "resolution must be at least 8");
  if (!(window.r_max > window.r_min) || !(window.theta_max > window.theta_min) || window.r_min < 0.0)
    throw Error(ErrorKind::InvalidArgument, "empty window");
  if (which == LevelKind::ModulusPhi && !(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  LevelCurveSet out;
  out.which = which;
  out.t = which == LevelKind::ModulusPhi ? t : 2.0;
  out.levels = levels;
  out.window = window;

  for (double level : levels) {
    if (!std::isfinite(level)) throw Error(ErrorKind::InvalidArgument, "levels must be finite");
    std::vector<Polyline> lines;
    auto flush = [&](Polyline& cur) {
      if (!cur.empty()) lines.push_back(std::move(cur));
      cur.clear();
    };
    if (which == LevelKind::ModulusPhi) {
      if (!(level > 0.0)) throw Error(ErrorKind::InvalidArgument, "modulus levels must be positive");
      const double ll = std::log(level);
      for (const auto& loop : trace_modulus_level(t, ll, window.r_min, window.r_max, resolution)) {
        Polyline cur;
        for (const auto& p : loop) {
          if (in_window(window, p))
            cur.push_back(p);
          else
            flush(cur);
        }
        flush(cur);
      }
    } else {
      const auto traced = trace_arg_level(level, resolution);
      Polyline cur;
      for (const auto& p : traced) {
        if (in_window(window, p))
          cur.push_back(p);
        else
          flush(cur);
      }
      flush(cur);
    }
    std::size_t count = 0;
    for (const auto& l : lines) {
      count += l.size();
      for (const auto& p : l) {
        const double tol = 1e-8 * (which == LevelKind::ModulusPhi ? std::max(1.0, level) : 1.0);
        if (level_residual(which, out.t, level, p) > tol)
          throw Error(ErrorKind::NonConvergence, "traced point misses its level");
      }
    }
    if (count == 0) throw Error(ErrorKind::EmptyLevel, "no point of level " + format_number(level) + " in the window");
    out.polylines.push_back(std::move(lines));
  }
  return out;
}

ComponentReport arg_phi_components(const std::vector<double>& levels_in, std::size_t samples, std::size_t resolution) {
  ComponentReport rep;
  rep.levels = levels_in;
  std::sort(rep.levels.begin(), rep.levels.end());
  std::vector<std::vector<cplx>> polys;
  for (double c : rep.levels) {
    const auto line = trace_arg_level(c, resolution);
    if (line.empty()) throw Error(ErrorKind::EmptyLevel, "level " + std::to_string(c) + " has no curve");
    polys.push_back(to_cartesian(line));
    rep.polygon_sizes.push_back(line.size());
    if (c == 0.0)
      for (const auto& p : line)
        if (!(p.r * std::sin(p.theta) > 0.0)) rep.gamma0_off_axis = false;
  }

  auto sample_in = [&](std::size_t idx, auto&& accept, auto&& visit) {
    const auto& poly = polys[idx];
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& p : poly) {
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
    std::size_t got = 0;
    for (std::size_t k = 1; got < samples && k < 400 * samples; ++k) {
      const cplx q(x0 + (x1 - x0) * halton(k, 2), y0 + (y1 - y0) * halton(k, 3));
      if (!point_in_polygon(poly, q) || !accept(q)) continue;
      ++got;
      visit(q);
    }
  };

  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (!(rep.levels[i] < rep.levels[j])) continue;
      sample_in(
          i, [](cplx) { return true; },
          [&](cplx q) {
            ++rep.nesting_samples;
            if (!point_in_polygon(polys[j], q)) ++rep.nesting_failures;
          });
    }

  for (std::size_t i = 0; i + 1 < polys.size(); ++i) {
    const double a = rep.levels[i];
    const double b = rep.levels[i + 1];
    const bool upper = std::fmod(-b / pi, 2.0) == 1.0 && a == b - pi;
    sample_in(
        i + 1, [&](cplx q) { return !point_in_polygon(polys[i], q); },
        [&](cplx q) {
          const double f = halfline_arg_f(std::abs(q), std::arg(q));
          const cplx img = halfline_phi(2.0, q);
          ++rep.component_samples;
          const double wrapped = std::remainder(f - std::arg(img), 2.0 * pi);
          if (std::abs(wrapped) > 1e-8) ++rep.component_failures;
          if (upper && !(img.imag() > 0.0) && f > a && f < b) ++rep.component_failures;
        });
  }

  for (std::size_t k = 1; k <= samples; ++k) {
    const double r = 5.0 * halton(k, 2);
    const double th = pi * halton(k, 3);
    if (!(r > 0.0) || !(th > 0.0)) continue;
    ++rep.sign_samples;
    if (!(halfline_arg_f(r, th) < th && th < pi)) ++rep.sign_failures;
  }
  return rep;
}

ComponentReport arg_phi_components(int k_max, std::size_t samples) {
  if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be at least 1");
  std::vector<double> levels{0.0};
  for (int j = 1; j <= 2 * k_max - 1; ++j) levels.push_back(-pi * j);
  return arg_phi_components(levels, samples, 800);
}

}  // namespace freemult
