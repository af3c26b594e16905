#include "freemult/semigroups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "freemult/convolution.hpp"
#include "freemult/errors.hpp"
#include "freemult/fixed_point.hpp"
#include "freemult/parallel.hpp"
#include "freemult/roots.hpp"

namespace freemult {

using std::numbers::pi;

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

cplx circle_mt_fixed_point(const CircleMeasure& mu, double t, cplx z) {
  if (z == cplx{} || t == 0.0) return z;
  auto F = [&](cplx w) { return z * std::exp(-t * log_k(mu, w)); };
  FixedPointOptions opt;
  opt.tol = 1e-13 * std::abs(z);
  opt.radius = std::abs(z);
  return solve_fixed_point(F, z, opt).value;
}

}  // namespace

cplx circle_phi(double t, cplx w) { return w * std::exp(0.5 * t * (1.0 + w) / (1.0 - w)); }

cplx halfline_phi(double t, cplx w) { return w * std::exp(0.5 * t * (w + 1.0) / (w - 1.0)); }

cplx circle_normal_eta(double t, cplx z, double tol) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "normal parameter must be positive");
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDomain, "circle normal eta needs |z| < 1");
  if (z == cplx{}) return 0.0;
  FixedPointOptions opt;
  opt.tol = tol * std::abs(z);
  opt.radius = std::abs(z);
  auto F = [&](cplx w) { return z * std::exp(-0.5 * t * (1.0 + w) / (1.0 - w)); };
  opt.derivative = [&](cplx w) { return -t * F(w) / ((1.0 - w) * (1.0 - w)); };
  return solve_fixed_point(F, z * std::exp(-0.5 * t), opt).value;
}

cplx halfline_normal_eta(double t, cplx z, double tol) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "normal parameter must be positive");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || (z.imag() == 0.0 && z.real() > 0.0))
    throw Error(ErrorKind::OutsideDomain, "half-line normal eta needs z off the positive axis");
  if (z == cplx{}) return 0.0;
  if (z.imag() < 0.0) return std::conj(halfline_normal_eta(t, std::conj(z), tol));

  // On the negative axis Phi is increasing with Phi(w)/w between e^(-t/2) and e^(t/2).
  auto solve_axis = [&](double x) {
    auto g = [&](double w) { return halfline_phi(t, w).real() - x; };
    auto dg = [&](double w) { return std::exp(0.5 * t * (w + 1.0) / (w - 1.0)) * (1.0 - t * w / ((w - 1.0) * (w - 1.0))); };
    return solve_monotone(g, x * std::exp(0.5 * t), x * std::exp(-0.5 * t), 1e-16 * std::abs(x), dg);
  };
  if (z.imag() == 0.0) return solve_axis(z.real());

  auto newton = [&](cplx target, cplx w, cplx& out) {
    for (int it = 0; it < 40; ++it) {
      const cplx sigma = std::exp(0.5 * t * (w + 1.0) / (w - 1.0));
      const cplx r = w * sigma - target;
      if (std::abs(r) <= tol * std::abs(target)) {
        out = w;
        return true;
      }
      const cplx d = sigma * (1.0 - t * w / ((w - 1.0) * (w - 1.0)));
      if (std::abs(d) < 1e-300) return false;
      w -= r / d;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || w.imag() < 0.0 || std::abs(w - 1.0) < 1e-12) return false;
    }
    return false;
  };

  const cplx z0 = -0.01;
  cplx w = solve_axis(z0.real());
  double s = 0.0;
  double ds = 1.0;
  while (s < 1.0) {
    const double sn = std::min(1.0, s + ds);
    const cplx target = z0 + sn * (z - z0);
    cplx wn;
    if (newton(target, w, wn) && std::arg(wn) >= std::arg(target) - 1e-9) {
      w = wn;
      s = sn;
      ds = std::min(2.0 * ds, 1.0);
    } else {
      ds *= 0.5;
      if (ds < 1e-10) throw Error(ErrorKind::PathEscapedDomain, "continuation path left the image domain");
    }
  }
  return w;
}

CircleMeasure lambda_map(const CircleMeasure& nu) {
  auto u = [nu](cplx z) {
    const cplx e = eta_eval(nu, z);
    return 0.5 * (1.0 + e) / (1.0 - e);
  };
  DerivedTransforms d;
  d.quotient = [u](cplx z) { return std::exp(-u(z)); };
  d.eta = [u](cplx z) { return z * std::exp(-u(z)); };
  d.log_k = u;
  d.note = "Lambda(" + nu.describe() + ")";
  d.canonical = nu.canonical();
  return CircleMeasure::derived(std::move(d));
}

HalfLineMeasure lambda_map_halfline(const HalfLineMeasure& nu) {
  auto u = [nu](cplx z) {
    const cplx e = eta_eval(nu, z);
    return 0.5 * (e + 1.0) / (e - 1.0);
  };
  DerivedTransforms d;
  d.quotient = [u](cplx z) { return std::exp(-u(z)); };
  d.eta = [u](cplx z) { return z * std::exp(-u(z)); };
  d.log_k = u;
  d.note = "Lambda(" + nu.describe() + ")";
  return HalfLineMeasure::derived(std::move(d));
}

DensityTable lambda_map_inverse(const CircleMeasure& mu, const LambdaInverseOptions& options) {
  const cplx m = mean(mu);
  if (std::abs(m - std::exp(-0.5)) >= 1e-8)
    throw Error(ErrorKind::MeanMismatch, "mean is " + fmt(m.real()) + (m.imag() >= 0 ? "+" : "") + fmt(m.imag()) + "i, not e^(-1/2)");
  if (options.grid < 8) throw Error(ErrorKind::InvalidArgument, "grid needs at least 8 points");
  if (options.fixed_radius && !(*options.fixed_radius > 0.0 && *options.fixed_radius < 1.0))
    throw Error(ErrorKind::InvalidArgument, "fixed radius must lie in (0, 1)");
  const std::size_t n = options.grid;
  DensityTable table;
  table.weights.assign(n, 2.0 * pi / static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) table.abscissae.push_back(-pi + 2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
  auto u = [&](cplx z) { return log_k(mu, z); };
  table.values = parallel_map<double>(n, [&](std::size_t j) {
    const double theta = table.abscissae[j];
    if (options.fixed_radius) return u(std::polar(*options.fixed_radius, -theta)).real() / pi;
    try {
      return radial_limit(u, -theta, options.schedule).value.real() / pi;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivergentLimit) throw;
      return static_cast<double>(INFINITY);
    }
  });
  table.update_mass();
  table.note = "density of the preimage under Lambda, indexed by the point's own angle";
  return table;
}

CircleMeasure mt_map(const CircleMeasure& mu, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "M_t needs t >= 0");
  require_positive_mean(mu, "M_t");
  if (t == 0.0) return mu;
  DerivedTransforms d;
  d.quotient = [mu, t](cplx z) { return std::exp(-log_k(mu, circle_mt_fixed_point(mu, t, z))); };
  d.eta = [mu, t](cplx z) { return z * std::exp(-log_k(mu, circle_mt_fixed_point(mu, t, z))); };
  d.log_k = [mu, t](cplx z) { return log_k(mu, circle_mt_fixed_point(mu, t, z)); };
  d.note = "M(" + mu.describe() + "," + fmt(t) + ")";
  d.canonical = mu.canonical();
  return CircleMeasure::derived(std::move(d));
}

HalfLineMeasure mt_map_halfline(const HalfLineMeasure& mu, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "M_t needs t >= 0");
  if (t == 0.0) return mu;
  auto u = [mu](cplx w) { return log_k(mu, w); };
  DerivedTransforms d;
  d.quotient = [mu, t, u](cplx z) { return std::exp(-log_k(mu, halfline_power_fixed_point(u, t, z))); };
  d.eta = [mu, t, u](cplx z) { return z * std::exp(-log_k(mu, halfline_power_fixed_point(u, t, z))); };
  d.log_k = [mu, t, u](cplx z) { return log_k(mu, halfline_power_fixed_point(u, t, z)); };
  d.note = "M(" + mu.describe() + "," + fmt(t) + ")";
  return HalfLineMeasure::derived(std::move(d));
}

std::vector<cplx> polar_grid(const GridSpec& g) {
  if (g.radial < 1 || g.angular < 1 || !(g.max_radius > 0.0 && g.max_radius < 1.0))
    throw Error(ErrorKind::InvalidArgument, "polar grid needs positive counts and a radius in (0, 1)");
  std::vector<cplx> pts;
  for (int i = 1; i <= g.radial; ++i)
    for (int j = 0; j < g.angular; ++j) pts.push_back(std::polar(g.max_radius * i / g.radial, 2.0 * pi * j / g.angular));
  return pts;
}

std::vector<cplx> segment_grid(int n, double a, double b) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "segment grid needs at least 2 points");
  std::vector<cplx> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(a + (b - a) * i / (n - 1), 0.0);
  return pts;
}

std::vector<cplx> halfplane_grid(int radial, int angular, double r0, double r1) {
  if (radial < 1 || angular < 1 || !(r0 > 0.0 && r1 >= r0)) throw Error(ErrorKind::InvalidArgument, "bad half-plane grid");
  std::vector<cplx> pts;
  for (int i = 0; i < radial; ++i) {
    const double r = radial == 1 ? r0 : r0 + (r1 - r0) * i / (radial - 1);
    for (int j = 0; j < angular; ++j) pts.push_back(std::polar(r, pi * (j + 0.5) / angular));
  }
  return pts;
}

ThmResidualReport verify_thm11(const CircleMeasure& nu, double t, const std::vector<cplx>& points) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  for (const auto& z : points)
    if (!(std::abs(z) <= 0.95) || z == cplx{}) throw Error(ErrorKind::InvalidArgument, "grid points need 0 < |z| <= 0.95");
  const auto mu = lambda_map(nu);
  const auto product = free_multiply(nu, CircleMeasure::normal(t));
  const auto mt = mt_map(mu, t);
  ThmResidualReport rep;
  rep.grid = points;
  rep.residuals = parallel_map<double>(points.size(), [&](std::size_t i) {
    const cplx z = points[i];
    const cplx e = eta_eval(product, z);
    const cplx lhs = std::exp(0.5 * (1.0 + e) / (1.0 - e));
    const cplx rhs = z / eta_eval(mt, z);
    return std::abs(lhs - rhs);
  });
  for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
  rep.parameters = "nu=" + nu.describe() + ";t=" + fmt(t);
  return rep;
}

ThmResidualReport verify_thm11(const CircleMeasure& nu, double t, const GridSpec& grid) {
  return verify_thm11(nu, t, polar_grid(grid));
}

double verify_thm_semigroup(const CircleMeasure& mu, double t, double s) {
  if (!(t >= 0.0) || !(s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "semigroup parameters must be nonnegative");
  const auto lhs = mt_map(mu, t + s);
  const auto rhs = mt_map(mt_map(mu, s), t);
  const auto pts = polar_grid({4, 16, 0.9});
  const auto diffs = parallel_map<double>(pts.size(), [&](std::size_t i) { return std::abs(eta_eval(lhs, pts[i]) - eta_eval(rhs, pts[i])); });
  return *std::max_element(diffs.begin(), diffs.end());
}

ThmResidualReport verify_thm45(const HalfLineMeasure& nu, double t, const std::vector<cplx>& points) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  const auto mu = lambda_map_halfline(nu);
  const auto product = free_multiply(nu, HalfLineMeasure::normal(t));
  const auto mt = mt_map_halfline(mu, t);
  ThmResidualReport rep;
  rep.grid = points;
  rep.residuals = parallel_map<double>(points.size(), [&](std::size_t i) {
    const cplx z = points[i];
    const cplx e = eta_eval(product, z);
    const cplx lhs = std::exp(0.5 * (e + 1.0) / (e - 1.0));
    const cplx rhs = z / eta_eval(mt, z);
    return std::abs(lhs - rhs);
  });
  for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
  rep.parameters = "nu=" + nu.describe() + ";t=" + fmt(t);
  return rep;
}

SeriesCheck verify_cor313(const CircleMeasure& mu, const CircleMeasure& nu, std::size_t order) {
  const auto rho = subordination_distribution(mu, nu);
  if (!rho.principal) throw Error(ErrorKind::HaarLike, "first measure has no finite vanishing order");
  const int k = *moment_data(mu).k_order;
  SeriesCheck out;
  out.k = k;
  out.order = std::max<std::size_t>(1, order / static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  out.lhs = sigma_series(rho.measure, out.order);
  out.rhs = series_compose(sigma_series(nu, out.order), eta_series(mu, out.order));
  out.max_difference = out.lhs.max_abs_difference(out.rhs);
  return out;
}

}  // namespace freemult
