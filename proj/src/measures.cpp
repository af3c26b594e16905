#include "freemult/measures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "freemult/errors.hpp"
#include "freemult/semigroups.hpp"

namespace freemult {

using std::numbers::pi;

struct CircleMeasure::SeriesCache {
  std::mutex mutex;
  std::map<std::size_t, TruncatedSeries> eta;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms, bool circle) {
  if (atoms.empty()) throw Error(ErrorKind::InvalidArgument, "atomic measure needs at least one atom");
  double total = 0.0;
  for (auto& a : atoms) {
    if (!std::isfinite(a.position) || !std::isfinite(a.weight))
      throw Error(ErrorKind::InvalidArgument, "atom has a non-finite field");
    if (!(a.weight > 0.0)) throw Error(ErrorKind::InvalidArgument, "atom weights must be positive");
    if (circle) {
      a.position = std::fmod(a.position, 2.0 * pi);
      if (a.position < 0.0) a.position += 2.0 * pi;
      if (a.position >= 2.0 * pi) a.position = 0.0;
    } else if (!(a.position > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "half-line atoms must sit at positive locations");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorKind::InvalidArgument, "atom weights sum to " + fmt(total) + ", not 1");
  for (auto& a : atoms) a.weight /= total;
  return atoms;
}

void check_disk(cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDomain, "point " + fmt(std::abs(z)) + " is not inside the unit disk");
}

void check_halfline_domain(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || (z.imag() == 0.0 && z.real() > 0.0))
    throw Error(ErrorKind::OutsideDomain, "point lies on the positive half-line");
}

cplx circle_atom(const Atom& a) { return std::polar(1.0, a.position); }

// psi(z)/z for atoms at xi: sum w xi/(1 - xi z).
template <class Xi>
cplx atomic_psi_over_z(const std::vector<Atom>& atoms, cplx z, Xi xi_of) {
  cplx s = 0.0;
  for (const auto& a : atoms) {
    const cplx xi = xi_of(a);
    s += a.weight * xi / (1.0 - xi * z);
  }
  return s;
}

// -log q along [0, z] with the argument unwrapped, starting at the principal Log of q(0).
cplx continue_log_k(const ComplexFunction& q, cplx z) {
  cplx prev = q(0.0);
  if (std::abs(prev) <= 1e-300) throw Error(ErrorKind::ZeroMean, "log k needs a nonzero mean");
  double arg = std::arg(prev);
  double s = 0.0;
  double ds = 0.125;
  while (s < 1.0) {
    const double sn = std::min(1.0, s + ds);
    const cplx qn = q(sn * z);
    if (std::abs(qn) < 1e-14) throw Error(ErrorKind::EtaVanishes, "eta vanishes away from 0");
    const double d = std::arg(qn / prev);
    if (std::abs(d) > 0.5 && ds > 1e-9) {
      ds *= 0.5;
      continue;
    }
    arg += d;
    prev = qn;
    s = sn;
    ds = std::min(2.0 * ds, 0.25);
  }
  return -cplx(std::log(std::abs(prev)), arg);
}

TruncatedSeries cauchy_coefficients(const ComplexFunction& eta, std::size_t order, const CauchySampling& cs) {
  const std::size_t m = std::max(cs.samples, 2 * (order + 1));
  std::vector<cplx> values(m);
  for (std::size_t j = 0; j < m; ++j) values[j] = eta(std::polar(cs.radius, 2.0 * pi * static_cast<double>(j) / static_cast<double>(m)));
  std::vector<cplx> c(order + 1, 0.0);
  for (std::size_t n = 1; n <= order; ++n) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const auto phase = static_cast<double>((n * j) % m) / static_cast<double>(m);
      s += values[j] * std::polar(1.0, -2.0 * pi * phase);
    }
    c[n] = s / (static_cast<double>(m) * std::pow(cs.radius, static_cast<double>(n)));
  }
  return {std::move(c), order};
}

TruncatedSeries eta_from_moments(const std::vector<cplx>& m, std::size_t order) {
  std::vector<cplx> psi(order + 1, 0.0);
  for (std::size_t n = 1; n <= order; ++n) psi[n] = m[n - 1];
  const TruncatedSeries p(psi, order);
  return series_divide(p, TruncatedSeries::constant(1.0, order) + p);
}

cplx derived_quotient(const DerivedTransforms& f, cplx z) { return f.quotient(z); }

cplx derived_eta(const DerivedTransforms& f, cplx z) { return f.eta ? f.eta(z) : z * f.quotient(z); }

}  // namespace

CircleMeasure::CircleMeasure(Variant v)
    : v_(std::make_shared<const Variant>(std::move(v))), cache_(std::make_shared<SeriesCache>()) {}

CircleMeasure CircleMeasure::atomic(std::vector<Atom> atoms) {
  return CircleMeasure(circle::Atomic{normalize_atoms(std::move(atoms), true)});
}

CircleMeasure CircleMeasure::dirac(double angle) { return atomic({{angle, 1.0}}); }

CircleMeasure CircleMeasure::roots_of_unity(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "root order must be positive");
  std::vector<Atom> atoms;
  for (int j = 0; j < k; ++j) atoms.push_back({2.0 * pi * j / k, 1.0 / k});
  return atomic(std::move(atoms));
}

CircleMeasure CircleMeasure::haar() { return CircleMeasure(circle::Haar{}); }

CircleMeasure CircleMeasure::normal(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "normal parameter must be positive");
  return CircleMeasure(circle::Normal{t});
}

CircleMeasure CircleMeasure::rotated(const CircleMeasure& base, double phase) {
  if (!std::isfinite(phase)) throw Error(ErrorKind::InvalidArgument, "phase must be finite");
  return CircleMeasure(circle::Rotated{std::make_shared<const CircleMeasure>(base), phase});
}

CircleMeasure CircleMeasure::derived(DerivedTransforms fns) {
  if (!fns.quotient) throw Error(ErrorKind::InvalidArgument, "derived measure needs a quotient evaluator");
  return CircleMeasure(circle::Derived{std::make_shared<const DerivedTransforms>(std::move(fns))});
}

std::string CircleMeasure::describe() const {
  return std::visit(overloaded{
                        [](const circle::Atomic& a) {
                          std::string s = "atomic[";
                          for (std::size_t i = 0; i < a.atoms.size(); ++i) {
                            if (i) s += ",";
                            s += fmt(a.atoms[i].position) + ":" + fmt(a.atoms[i].weight);
                          }
                          return s + "]";
                        },
                        [](const circle::Haar&) { return std::string("haar"); },
                        [](const circle::Normal& n) { return "circle-normal(" + fmt(n.t) + ")"; },
                        [](const circle::Rotated& r) { return "rotated(" + r.base->describe() + "," + fmt(r.phase) + ")"; },
                        [](const circle::Derived& d) { return d.fns->note.empty() ? std::string("derived") : d.fns->note; },
                    },
                    *v_);
}

bool CircleMeasure::canonical() const noexcept {
  if (const auto* d = std::get_if<circle::Derived>(v_.get())) return d->fns->canonical;
  if (const auto* r = std::get_if<circle::Rotated>(v_.get())) return r->base->canonical();
  return true;
}

HalfLineMeasure::HalfLineMeasure(Variant v) : v_(std::make_shared<const Variant>(std::move(v))) {}

HalfLineMeasure HalfLineMeasure::atomic(std::vector<Atom> atoms) {
  return HalfLineMeasure(halfline::Atomic{normalize_atoms(std::move(atoms), false)});
}

HalfLineMeasure HalfLineMeasure::dirac(double location) { return atomic({{location, 1.0}}); }

HalfLineMeasure HalfLineMeasure::normal(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "normal parameter must be positive");
  return HalfLineMeasure(halfline::Normal{t});
}

HalfLineMeasure HalfLineMeasure::derived(DerivedTransforms fns) {
  if (!fns.quotient) throw Error(ErrorKind::InvalidArgument, "derived measure needs a quotient evaluator");
  return HalfLineMeasure(halfline::Derived{std::make_shared<const DerivedTransforms>(std::move(fns))});
}

std::string HalfLineMeasure::describe() const {
  return std::visit(overloaded{
                        [](const halfline::Atomic& a) {
                          std::string s = "halfline-atomic[";
                          for (std::size_t i = 0; i < a.atoms.size(); ++i) {
                            if (i) s += ",";
                            s += fmt(a.atoms[i].position) + ":" + fmt(a.atoms[i].weight);
                          }
                          return s + "]";
                        },
                        [](const halfline::Normal& n) { return "halfline-normal(" + fmt(n.t) + ")"; },
                        [](const halfline::Derived& d) { return d.fns->note.empty() ? std::string("halfline-derived") : d.fns->note; },
                    },
                    *v_);
}

// ---- circle ----

cplx eta_eval(const CircleMeasure& mu, cplx z) {
  check_disk(z);
  return std::visit(overloaded{
                        [&](const circle::Atomic& a) {
                          const cplx q = atomic_psi_over_z(a.atoms, z, circle_atom);
                          const cplx psi = z * q;
                          return psi / (1.0 + psi);
                        },
                        [](const circle::Haar&) { return cplx{}; },
                        [&](const circle::Normal& n) { return circle_normal_eta(n.t, z); },
                        [&](const circle::Rotated& r) { return std::polar(1.0, r.phase) * eta_eval(*r.base, z); },
                        [&](const circle::Derived& d) { return derived_eta(*d.fns, z); },
                    },
                    mu.variant());
}

cplx psi_eval(const CircleMeasure& mu, cplx z) {
  check_disk(z);
  if (const auto* a = std::get_if<circle::Atomic>(&mu.variant())) return z * atomic_psi_over_z(a->atoms, z, circle_atom);
  const cplx e = eta_eval(mu, z);
  return e / (1.0 - e);
}

cplx eta_quotient(const CircleMeasure& mu, cplx z) {
  check_disk(z);
  return std::visit(overloaded{
                        [&](const circle::Atomic& a) {
                          const cplx q = atomic_psi_over_z(a.atoms, z, circle_atom);
                          return q / (1.0 + z * q);
                        },
                        [](const circle::Haar&) { return cplx{}; },
                        [&](const circle::Normal& n) {
                          const cplx e = circle_normal_eta(n.t, z);
                          return std::exp(-0.5 * n.t * (1.0 + e) / (1.0 - e));
                        },
                        [&](const circle::Rotated& r) { return std::polar(1.0, r.phase) * eta_quotient(*r.base, z); },
                        [&](const circle::Derived& d) { return derived_quotient(*d.fns, z); },
                    },
                    mu.variant());
}

cplx mean(const CircleMeasure& mu) {
  return std::visit(overloaded{
                        [](const circle::Atomic& a) {
                          cplx s = 0.0;
                          for (const auto& at : a.atoms) s += at.weight * circle_atom(at);
                          return s;
                        },
                        [](const circle::Haar&) { return cplx{}; },
                        [](const circle::Normal& n) { return cplx{std::exp(-0.5 * n.t), 0.0}; },
                        [](const circle::Rotated& r) { return std::polar(1.0, r.phase) * mean(*r.base); },
                        [](const circle::Derived& d) { return derived_quotient(*d.fns, 0.0); },
                    },
                    mu.variant());
}

cplx log_k(const CircleMeasure& mu, cplx z) {
  check_disk(z);
  return std::visit(
      overloaded{
          [&](const circle::Atomic&) { return continue_log_k([&](cplx w) { return eta_quotient(mu, w); }, z); },
          [](const circle::Haar&) -> cplx { throw Error(ErrorKind::ZeroMean, "Haar measure has no k-transform"); },
          [&](const circle::Normal& n) {
            const cplx e = circle_normal_eta(n.t, z);
            return 0.5 * n.t * (1.0 + e) / (1.0 - e);
          },
          [&](const circle::Rotated& r) {
            const cplx base0 = log_k(*r.base, 0.0);
            const cplx m = mean(mu);
            const double shift = std::round((-std::log(m) - (base0 - cplx(0.0, r.phase))).imag() / (2.0 * pi));
            return log_k(*r.base, z) - cplx(0.0, r.phase) + cplx(0.0, 2.0 * pi * shift);
          },
          [&](const circle::Derived& d) {
            if (d.fns->log_k) return d.fns->log_k(z);
            return continue_log_k(d.fns->quotient, z);
          },
      },
      mu.variant());
}

cplx k_transform(const CircleMeasure& mu, cplx z) {
  check_disk(z);
  if (z == cplx{}) {
    const cplx m = mean(mu);
    if (std::abs(m) <= kMomentThreshold) throw Error(ErrorKind::ZeroMean, "k-transform at 0 needs a nonzero mean");
    return 1.0 / m;
  }
  const cplx e = eta_eval(mu, z);
  if (std::abs(e) < 1e-14) throw Error(ErrorKind::EtaVanishes, "eta vanishes at a requested point");
  return z / e;
}

TruncatedSeries eta_series(const CircleMeasure& mu, std::size_t order, const CauchySampling& sampling) {
  return std::visit(overloaded{
                        [&](const circle::Atomic& a) {
                          std::vector<cplx> m(order);
                          for (std::size_t n = 1; n <= order; ++n) {
                            cplx s = 0.0;
                            for (const auto& at : a.atoms) s += at.weight * std::polar(1.0, static_cast<double>(n) * at.position);
                            m[n - 1] = s;
                          }
                          return eta_from_moments(m, order);
                        },
                        [&](const circle::Haar&) { return TruncatedSeries::zero(order); },
                        [&](const circle::Normal& n) {
                          // eta is the compositional inverse of z exp((t/2)(1+z)/(1-z))
                          std::vector<cplx> h(order + 1, n.t);
                          h[0] = 0.5 * n.t;
                          const auto e = series_exp(TruncatedSeries(h, order));
                          std::vector<cplx> phi(order + 1);
                          for (std::size_t k = 1; k <= order; ++k) phi[k] = e[k - 1];
                          return series_invert(TruncatedSeries(phi, order));
                        },
                        [&](const circle::Rotated& r) { return std::polar(1.0, r.phase) * eta_series(*r.base, order, sampling); },
                        [&](const circle::Derived& d) {
                          return cauchy_coefficients([&](cplx z) { return derived_eta(*d.fns, z); }, order, sampling);
                        },
                    },
                    mu.variant());
}

TruncatedSeries eta_series(const CircleMeasure& mu, std::size_t order) {
  auto& cache = mu.cache();
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.eta.find(order); it != cache.eta.end()) return it->second;
  }
  auto s = eta_series(mu, order, CauchySampling{});
  std::lock_guard lock(cache.mutex);
  return cache.eta.emplace(order, std::move(s)).first->second;
}

TruncatedSeries psi_series(const CircleMeasure& mu, std::size_t order) {
  const auto e = eta_series(mu, order);
  return series_divide(e, TruncatedSeries::constant(1.0, order) - e);
}

cplx moment(const CircleMeasure& mu, std::size_t n) {
  if (n == 0) return 1.0;
  if (const auto* a = std::get_if<circle::Atomic>(&mu.variant())) {
    cplx s = 0.0;
    for (const auto& at : a->atoms) s += at.weight * std::polar(1.0, static_cast<double>(n) * at.position);
    return s;
  }
  if (mu.is_haar()) return 0.0;
  return psi_series(mu, std::max<std::size_t>(n, 1))[n];
}

TruncatedSeries sigma_series(const CircleMeasure& mu, std::size_t order) {
  const cplx m = mean(mu);
  if (std::abs(m) <= kMomentThreshold)
    throw Error(ErrorKind::ZeroMean, "Sigma needs a nonzero mean; use the modified S-transform");
  const auto inv = series_invert(eta_series(mu, order + 1));
  std::vector<cplx> c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) c[n] = inv[n + 1];
  return {std::move(c), order};
}

MomentData moment_data(const CircleMeasure& mu, std::size_t order) {
  const auto p = psi_series(mu, order);
  MomentData out;
  for (std::size_t n = 1; n <= order; ++n) {
    out.moments.push_back(p[n]);
    if (!out.k_order && std::abs(p[n]) > kMomentThreshold) out.k_order = static_cast<int>(n);
  }
  return out;
}

BranchedSeries modified_s(const CircleMeasure& mu, std::size_t order) {
  const auto data = moment_data(mu, order);
  if (!data.k_order) throw Error(ErrorKind::HaarLike, "all moments vanish through order " + std::to_string(order));
  const auto p = psi_series(mu, order);
  std::vector<cplx> c(order + 1, 0.0);
  for (std::size_t n = static_cast<std::size_t>(*data.k_order); n <= order; ++n) c[n] = p[n];
  return kth_root_inverse(TruncatedSeries(std::move(c), order), *data.k_order);
}

cplx modified_s_eval(const BranchedSeries& chi, int j, cplx z) {
  if (z == cplx{}) throw Error(ErrorKind::InvalidArgument, "modified S-transform is evaluated away from 0");
  return chi.evaluate(j, z) * (1.0 + z) / z;
}

namespace {

double arg_step(cplx a, cplx b) { return std::arg(b / a); }

// Increment of arg q along the arc [a0, a1] of |z| = r, refined until steps are small.
double arc_winding(const std::function<cplx(cplx)>& q, double r, double a0, double a1, cplx q0, cplx q1, int depth) {
  const double d = arg_step(q0, q1);
  if (std::abs(d) < 0.25 || depth == 0) return d;
  const double am = 0.5 * (a0 + a1);
  const cplx qm = q(std::polar(r, am));
  if (qm == cplx{}) return NAN;
  return arc_winding(q, r, a0, am, q0, qm, depth - 1) + arc_winding(q, r, am, a1, qm, q1, depth - 1);
}

}  // namespace

StarCertificate certify_star(const CircleMeasure& mu) {
  StarCertificate out;
  out.min_modulus = INFINITY;
  for (int i = 1; i <= 64; ++i) {
    const double r = 0.999 * i / 64.0;
    for (int j = 0; j < 64; ++j) {
      const cplx z = std::polar(r, 2.0 * pi * j / 64.0);
      const double m = std::abs(eta_eval(mu, z));
      if (m < out.min_modulus) {
        out.min_modulus = m;
        out.argmin = z;
      }
    }
  }
  if (out.min_modulus > 1e-10) {
    // zeros of eta in 0 < |z| < 0.999: argument principle minus the order at 0
    const std::function<cplx(cplx)> q = [&](cplx z) { return eta_eval(mu, z); };
    constexpr int n = 256;
    constexpr double r = 0.999;
    double total = 0.0;
    cplx prev = q(r);
    for (int j = 1; j <= n && std::isfinite(total); ++j) {
      const double a0 = 2.0 * pi * (j - 1) / n;
      const double a1 = 2.0 * pi * j / n;
      const cplx next = q(std::polar(r, a1));
      total += arc_winding(q, r, a0, a1, prev, next, 30);
      prev = next;
    }
    const auto order0 = static_cast<long>(eta_series(mu, 16).valuation(1e-12));
    out.winding = std::isfinite(total) ? static_cast<int>(std::lround(total / (2.0 * pi)) - order0) : -1;
  }
  out.member = out.min_modulus > 1e-10 && out.winding == 0;
  return out;
}

// ---- half-line ----

cplx eta_eval(const HalfLineMeasure& mu, cplx z) {
  check_halfline_domain(z);
  return std::visit(overloaded{
                        [&](const halfline::Atomic& a) {
                          const cplx psi = z * atomic_psi_over_z(a.atoms, z, [](const Atom& at) { return cplx(at.position); });
                          return psi / (1.0 + psi);
                        },
                        [&](const halfline::Normal& n) { return halfline_normal_eta(n.t, z); },
                        [&](const halfline::Derived& d) { return derived_eta(*d.fns, z); },
                    },
                    mu.variant());
}

cplx psi_eval(const HalfLineMeasure& mu, cplx z) {
  const cplx e = eta_eval(mu, z);
  return e / (1.0 - e);
}

cplx eta_quotient(const HalfLineMeasure& mu, cplx z) {
  check_halfline_domain(z);
  return std::visit(overloaded{
                        [&](const halfline::Atomic& a) {
                          const cplx q = atomic_psi_over_z(a.atoms, z, [](const Atom& at) { return cplx(at.position); });
                          return q / (1.0 + z * q);
                        },
                        [&](const halfline::Normal& n) {
                          const cplx e = halfline_normal_eta(n.t, z);
                          return std::exp(-0.5 * n.t * (e + 1.0) / (e - 1.0));
                        },
                        [&](const halfline::Derived& d) { return derived_quotient(*d.fns, z); },
                    },
                    mu.variant());
}

cplx log_k(const HalfLineMeasure& mu, cplx z) {
  check_halfline_domain(z);
  if (const auto* n = std::get_if<halfline::Normal>(&mu.variant())) {
    const cplx e = halfline_normal_eta(n->t, z);
    return 0.5 * n->t * (e + 1.0) / (e - 1.0);
  }
  if (const auto* d = std::get_if<halfline::Derived>(&mu.variant()); d && d->fns->log_k) return d->fns->log_k(z);
  const cplx q = eta_quotient(mu, z);
  if (std::abs(q) < 1e-14) throw Error(ErrorKind::EtaVanishes, "eta vanishes at a requested point");
  return -std::log(q);
}

double mean(const HalfLineMeasure& mu) {
  return std::visit(overloaded{
                        [](const halfline::Atomic& a) {
                          double s = 0.0;
                          for (const auto& at : a.atoms) s += at.weight * at.position;
                          return s;
                        },
                        [](const halfline::Normal& n) { return std::exp(0.5 * n.t); },
                        [](const halfline::Derived& d) { return derived_quotient(*d.fns, 0.0).real(); },
                    },
                    mu.variant());
}

TruncatedSeries eta_series(const HalfLineMeasure& mu, std::size_t order) {
  return std::visit(
      overloaded{
          [&](const halfline::Atomic& a) {
            std::vector<cplx> m(order);
            for (std::size_t n = 1; n <= order; ++n) {
              double s = 0.0;
              for (const auto& at : a.atoms) s += at.weight * std::pow(at.position, static_cast<double>(n));
              m[n - 1] = s;
            }
            return eta_from_moments(m, order);
          },
          [&](const halfline::Normal& n) {
            // z Sigma(z) with Sigma = exp(-(t/2)(1+z)/(1-z)), inverted formally.
            std::vector<cplx> h(order + 1, 2.0);
            h[0] = 1.0;
            const auto sigma = series_exp(TruncatedSeries(std::move(h), order) * cplx(-0.5 * n.t));
            std::vector<cplx> zs(order + 1, 0.0);
            for (std::size_t i = 0; i < order; ++i) zs[i + 1] = sigma[i];
            return series_invert(TruncatedSeries(std::move(zs), order));
          },
          [&](const halfline::Derived&) -> TruncatedSeries {
            throw Error(ErrorKind::InvalidArgument, "derived half-line measures carry no series");
          },
      },
      mu.variant());
}

// ---- measure files ----

namespace {

std::vector<Atom> parse_atoms(const nlohmann::json& j) {
  if (!j.contains("atoms") || !j["atoms"].is_array()) throw Error(ErrorKind::SpecParse, "\"atoms\" must be an array of [position, weight] pairs");
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw Error(ErrorKind::SpecParse, "each atom must be a [position, weight] pair");
    atoms.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorKind::SpecParse, "atom weights sum to " + fmt(total) + ", not 1");
  return atoms;
}

double parse_positive(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) throw Error(ErrorKind::SpecParse, std::string("missing numeric field \"") + key + "\"");
  const double v = j[key].get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::SpecParse, std::string("field \"") + key + "\" must be positive");
  return v;
}

MeasureSpec parse_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw Error(ErrorKind::SpecParse, "measure needs a string \"type\"");
  const auto type = j["type"].get<std::string>();
  try {
    if (type == "atomic") return CircleMeasure::atomic(parse_atoms(j));
    if (type == "haar") return CircleMeasure::haar();
    if (type == "circle-normal") return CircleMeasure::normal(parse_positive(j, "t"));
    if (type == "halfline-atomic") return HalfLineMeasure::atomic(parse_atoms(j));
    if (type == "halfline-normal") return HalfLineMeasure::normal(parse_positive(j, "t"));
    if (type == "rotated") {
      if (!j.contains("base")) throw Error(ErrorKind::SpecParse, "rotated measure needs a \"base\"");
      if (!j.contains("phase") || !j["phase"].is_number()) throw Error(ErrorKind::SpecParse, "rotated measure needs a numeric \"phase\"");
      const auto base = parse_json(j["base"]);
      if (!std::holds_alternative<CircleMeasure>(base)) throw Error(ErrorKind::SpecParse, "rotated base must be a circle measure");
      return CircleMeasure::rotated(std::get<CircleMeasure>(base), j["phase"].get<double>());
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SpecParse) throw;
    throw Error(ErrorKind::SpecParse, e.what());
  }
  throw Error(ErrorKind::SpecParse, "unknown measure type \"" + type + "\"");
}

}  // namespace

MeasureSpec parse_measure_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SpecParse, e.what());
  }
  return parse_json(j);
}

MeasureSpec load_measure_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SpecParse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_measure_spec(ss.str());
}

}  // namespace freemult
