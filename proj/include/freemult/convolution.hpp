#pragma once

#include <string>

#include "freemult/measures.hpp"

namespace freemult {

struct SubordinationPoint {
  cplx z;
  cplx omega1;
  cplx omega2;
  cplx eta_product;
  int iterations = 0;
  double r_fix = 0.0;   // |eta_mu(omega1) - eta_nu(omega2)|
  double r_prod = 0.0;  // |omega1 omega2 - z eta_product|
};

inline constexpr double kSubordinationTol = 1e-13;

/// Denjoy-Wolff iteration w <- z f_mu(z f_nu(w)) from w = z, with f = eta(w)/w.
[[nodiscard]] SubordinationPoint subordinate(const CircleMeasure& mu, const CircleMeasure& nu, cplx z,
                                             double tol = kSubordinationTol);

[[nodiscard]] CircleMeasure free_multiply(const CircleMeasure& mu, const CircleMeasure& nu);
[[nodiscard]] CircleMeasure boolean_multiply(const CircleMeasure& mu, const CircleMeasure& nu);

/// eta = z exp(-s u). A mean off the positive axis uses the principal branch
/// and yields a measure with canonical() == false.
[[nodiscard]] CircleMeasure boolean_power(const CircleMeasure& mu, double s);

/// Requires a positive mean and t >= 1.
[[nodiscard]] CircleMeasure free_power(const CircleMeasure& mu, double t);

struct SubordinationDistribution {
  CircleMeasure measure;
  std::string source;
  bool principal = true;
};

/// The measure whose eta is omega1 for the pair (mu, nu).
[[nodiscard]] SubordinationDistribution subordination_distribution(const CircleMeasure& mu, const CircleMeasure& nu);

/// Sigma of the result is k_mu.
[[nodiscard]] CircleMeasure bp_map(const CircleMeasure& mu);

/// Throws NonPositiveMeanBranch unless the mean is (numerically) a positive real.
void require_positive_mean(const CircleMeasure& mu, const char* where);

// Half-line. Points must avoid [0, inf).
[[nodiscard]] SubordinationPoint subordinate_halfline(const HalfLineMeasure& mu, const HalfLineMeasure& nu, cplx z,
                                                      double tol = kSubordinationTol);
[[nodiscard]] HalfLineMeasure free_multiply(const HalfLineMeasure& mu, const HalfLineMeasure& nu);
[[nodiscard]] HalfLineMeasure free_power_halfline(const HalfLineMeasure& mu, double t);
/// Throws BooleanPowerOutOfRange unless 0 <= t <= 1.
[[nodiscard]] HalfLineMeasure boolean_power_halfline(const HalfLineMeasure& mu, double t);

/// Solves w = z exp(-s u(w)) for a half-line log-k evaluator, walking from
/// the negative axis along |w| = |z| when z is off the axis.
[[nodiscard]] cplx halfline_power_fixed_point(const ComplexFunction& u, double s, cplx z, double tol = kSubordinationTol);

}  // namespace freemult
