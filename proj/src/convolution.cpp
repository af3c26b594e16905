#include "freemult/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freemult/errors.hpp"
#include "freemult/fixed_point.hpp"

namespace freemult {

namespace {

using std::numbers::pi;

FixedPointOptions circle_options(cplx z, double tol) {
  FixedPointOptions opt;
  opt.tol = tol * std::abs(z);
  opt.radius = std::abs(z);
  return opt;
}

void check_disk(cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDomain, "subordination needs |z| < 1");
}

void check_halfline(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || (z.imag() == 0.0 && z.real() >= 0.0))
    throw Error(ErrorKind::OutsideDomain, "half-line subordination needs z off [0, inf)");
}

}  // namespace

void require_positive_mean(const CircleMeasure& mu, const char* where) {
  const cplx m = mean(mu);
  if (std::abs(m) <= kMomentThreshold) throw Error(ErrorKind::ZeroMean, std::string(where) + " needs a nonzero mean");
  if (!(m.real() > 0.0) || std::abs(m.imag()) > 1e-12 * std::abs(m))
    throw Error(ErrorKind::NonPositiveMeanBranch, std::string(where) + " needs a positive mean");
}

SubordinationPoint subordinate(const CircleMeasure& mu, const CircleMeasure& nu, cplx z, double tol) {
  check_disk(z);
  SubordinationPoint p;
  p.z = z;
  if (z == cplx{}) return p;
  auto F = [&](cplx w) { return z * eta_quotient(mu, z * eta_quotient(nu, w)); };
  const auto fp = solve_fixed_point(F, z, circle_options(z, tol));
  p.omega2 = fp.value;
  p.omega1 = z * eta_quotient(nu, p.omega2);
  p.eta_product = eta_eval(mu, p.omega1);
  p.iterations = fp.iterations;
  p.r_fix = std::abs(p.eta_product - eta_eval(nu, p.omega2));
  p.r_prod = std::abs(p.omega1 * p.omega2 - z * p.eta_product);
  return p;
}

CircleMeasure free_multiply(const CircleMeasure& mu, const CircleMeasure& nu) {
  DerivedTransforms d;
  d.eta = [mu, nu](cplx z) { return subordinate(mu, nu, z).eta_product; };
  d.quotient = [mu, nu](cplx z) {
    if (z == cplx{}) return mean(mu) * mean(nu);
    return subordinate(mu, nu, z).eta_product / z;
  };
  d.note = "free(" + mu.describe() + "," + nu.describe() + ")";
  d.canonical = mu.canonical() && nu.canonical();
  return CircleMeasure::derived(std::move(d));
}

CircleMeasure boolean_multiply(const CircleMeasure& mu, const CircleMeasure& nu) {
  DerivedTransforms d;
  d.quotient = [mu, nu](cplx z) { return eta_quotient(mu, z) * eta_quotient(nu, z); };
  d.log_k = [mu, nu](cplx z) { return log_k(mu, z) + log_k(nu, z); };
  d.note = "boolean(" + mu.describe() + "," + nu.describe() + ")";
  d.canonical = mu.canonical() && nu.canonical();
  return CircleMeasure::derived(std::move(d));
}

CircleMeasure boolean_power(const CircleMeasure& mu, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw Error(ErrorKind::InvalidArgument, "Boolean power needs s >= 0");
  const cplx m = mean(mu);
  if (std::abs(m) <= kMomentThreshold) throw Error(ErrorKind::ZeroMean, "Boolean power needs a nonzero mean");
  if (s == 0.0) return CircleMeasure::dirac(0.0);
  if (s == 1.0) return mu;
  const bool positive = m.real() > 0.0 && std::abs(m.imag()) <= 1e-12 * std::abs(m);
  DerivedTransforms d;
  d.quotient = [mu, s](cplx z) { return std::exp(-s * log_k(mu, z)); };
  d.log_k = [mu, s](cplx z) { return s * log_k(mu, z); };
  d.note = "boolean-power(" + mu.describe() + "," + std::to_string(s) + ")";
  d.canonical = positive && mu.canonical();
  return CircleMeasure::derived(std::move(d));
}

namespace {

// w = z exp(-s u(w)) inside the disk of radius |z|.
cplx circle_power_fixed_point(const CircleMeasure& mu, double s, cplx z) {
  if (z == cplx{} || s == 0.0) return z;
  auto F = [&](cplx w) { return z * std::exp(-s * log_k(mu, w)); };
  return solve_fixed_point(F, z, circle_options(z, kSubordinationTol)).value;
}

}  // namespace

CircleMeasure free_power(const CircleMeasure& mu, double t) {
  if (!(t >= 1.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "free power needs t >= 1");
  require_positive_mean(mu, "free power");
  if (t == 1.0) return mu;
  DerivedTransforms d;
  d.eta = [mu, t](cplx z) {
    const cplx w = circle_power_fixed_point(mu, t - 1.0, z);
    return w * std::exp(-log_k(mu, w));
  };
  d.quotient = [mu, t](cplx z) { return std::exp(-t * log_k(mu, circle_power_fixed_point(mu, t - 1.0, z))); };
  d.log_k = [mu, t](cplx z) { return t * log_k(mu, circle_power_fixed_point(mu, t - 1.0, z)); };
  d.note = "free-power(" + mu.describe() + "," + std::to_string(t) + ")";
  d.canonical = mu.canonical();
  return CircleMeasure::derived(std::move(d));
}

SubordinationDistribution subordination_distribution(const CircleMeasure& mu, const CircleMeasure& nu) {
  const std::string source = mu.describe() + "|" + nu.describe();
  if (mu.is_haar() || !moment_data(mu).k_order) return {CircleMeasure::haar(), source, false};
  DerivedTransforms d;
  d.eta = [mu, nu](cplx z) { return subordinate(mu, nu, z).omega1; };
  // omega1 / z = f_nu(omega2), which stays defined at z = 0.
  d.quotient = [mu, nu](cplx z) {
    if (z == cplx{}) return mean(nu);
    return eta_quotient(nu, subordinate(mu, nu, z).omega2);
  };
  d.note = "subordination(" + source + ")";
  d.canonical = mu.canonical() && nu.canonical();
  return {CircleMeasure::derived(std::move(d)), source, true};
}

CircleMeasure bp_map(const CircleMeasure& mu) {
  DerivedTransforms d;
  d.eta = [mu](cplx z) { return circle_power_fixed_point(mu, 1.0, z); };
  d.quotient = [mu](cplx z) {
    if (z == cplx{}) return std::exp(-log_k(mu, 0.0));
    return circle_power_fixed_point(mu, 1.0, z) / z;
  };
  d.log_k = [mu](cplx z) { return log_k(mu, circle_power_fixed_point(mu, 1.0, z)); };
  d.note = "bp(" + mu.describe() + ")";
  d.canonical = mu.canonical();
  return CircleMeasure::derived(std::move(d));
}

// ---- half-line ----

SubordinationPoint subordinate_halfline(const HalfLineMeasure& mu, const HalfLineMeasure& nu, cplx z, double tol) {
  check_halfline(z);
  if (z.imag() < 0.0) {
    auto p = subordinate_halfline(mu, nu, std::conj(z), tol);
    p.z = z;
    p.omega1 = std::conj(p.omega1);
    p.omega2 = std::conj(p.omega2);
    p.eta_product = std::conj(p.eta_product);
    return p;
  }
  auto F = [&](cplx w) { return z * eta_quotient(mu, z * eta_quotient(nu, w)); };
  FixedPointOptions opt;
  opt.tol = tol * std::abs(z);
  opt.adaptive_damping = true;
  opt.keep_trail = true;
  const auto fp = solve_fixed_point(F, z, opt);
  SubordinationPoint p;
  p.z = z;
  p.omega2 = fp.value;
  p.omega1 = z * eta_quotient(nu, p.omega2);
  p.eta_product = eta_eval(mu, p.omega1);
  p.iterations = fp.iterations;
  p.r_fix = std::abs(p.eta_product - eta_eval(nu, p.omega2));
  p.r_prod = std::abs(p.omega1 * p.omega2 - z * p.eta_product);
  return p;
}

HalfLineMeasure free_multiply(const HalfLineMeasure& mu, const HalfLineMeasure& nu) {
  DerivedTransforms d;
  d.eta = [mu, nu](cplx z) {
    if (z == cplx{}) return cplx{};
    return subordinate_halfline(mu, nu, z).eta_product;
  };
  d.quotient = [mu, nu](cplx z) {
    if (z == cplx{}) return cplx(mean(mu) * mean(nu));
    return subordinate_halfline(mu, nu, z).eta_product / z;
  };
  d.note = "free(" + mu.describe() + "," + nu.describe() + ")";
  return HalfLineMeasure::derived(std::move(d));
}

cplx halfline_power_fixed_point(const ComplexFunction& u, double s, cplx z, double tol) {
  if (z == cplx{} || s == 0.0) return z;
  check_halfline(z);
  if (z.imag() < 0.0) return std::conj(halfline_power_fixed_point(u, s, std::conj(z), tol));
  auto solve_at = [&](cplx zz, cplx w0) {
    auto F = [&](cplx w) { return zz * std::exp(-s * u(w)); };
    FixedPointOptions opt;
    opt.tol = tol * std::abs(zz);
    opt.adaptive_damping = true;
    return solve_fixed_point(F, w0, opt).value;
  };
  const double r = std::abs(z);
  cplx w = solve_at(-r, -r);
  if (z.imag() == 0.0) return w;
  const double target = std::arg(z);
  const int steps = std::max(1, static_cast<int>(std::ceil((pi - target) / 0.1)));
  for (int i = 1; i <= steps; ++i) {
    const double a = pi + (target - pi) * i / steps;
    const cplx zz = i == steps ? z : std::polar(r, a);
    w = solve_at(zz, w);
  }
  return w;
}

HalfLineMeasure free_power_halfline(const HalfLineMeasure& mu, double t) {
  if (!(t >= 1.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "free power needs t >= 1");
  if (t == 1.0) return mu;
  auto u = [mu](cplx w) { return log_k(mu, w); };
  DerivedTransforms d;
  d.eta = [mu, t, u](cplx z) {
    const cplx w = halfline_power_fixed_point(u, t - 1.0, z);
    return w * std::exp(-log_k(mu, w));
  };
  d.quotient = [mu, t, u](cplx z) {
    if (z == cplx{}) return cplx(std::pow(mean(mu), t));
    return std::exp(-t * log_k(mu, halfline_power_fixed_point(u, t - 1.0, z)));
  };
  d.log_k = [mu, t, u](cplx z) { return t * log_k(mu, halfline_power_fixed_point(u, t - 1.0, z)); };
  d.note = "free-power(" + mu.describe() + "," + std::to_string(t) + ")";
  return HalfLineMeasure::derived(std::move(d));
}

HalfLineMeasure boolean_power_halfline(const HalfLineMeasure& mu, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorKind::BooleanPowerOutOfRange, "half-line Boolean powers need 0 <= t <= 1");
  if (t == 0.0) return HalfLineMeasure::dirac(1.0);
  if (t == 1.0) return mu;
  DerivedTransforms d;
  d.quotient = [mu, t](cplx z) {
    if (z == cplx{}) return cplx(std::pow(mean(mu), t));
    return std::exp(-t * log_k(mu, z));
  };
  d.log_k = [mu, t](cplx z) { return t * log_k(mu, z); };
  d.note = "boolean-power(" + mu.describe() + "," + std::to_string(t) + ")";
  return HalfLineMeasure::derived(std::move(d));
}

}  // namespace freemult
