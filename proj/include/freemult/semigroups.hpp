#pragma once

#include <string>
#include <vector>

#include "freemult/density_table.hpp"
#include "freemult/measures.hpp"
#include "freemult/radial.hpp"

namespace freemult {

/// eta of the circle normal law: the fixed point of w <- z exp(-(t/2)(1+w)/(1-w)).
[[nodiscard]] cplx circle_normal_eta(double t, cplx z, double tol = 1e-15);

/// Phi_t(w) = w exp((t/2)(1+w)/(1-w)).
[[nodiscard]] cplx circle_phi(double t, cplx w);

/// eta of the half-line normal law by Newton continuation from -0.01.
[[nodiscard]] cplx halfline_normal_eta(double t, cplx z, double tol = 1e-14);

/// Phi(w) = w exp((t/2)(w+1)/(w-1)).
[[nodiscard]] cplx halfline_phi(double t, cplx w);

/// u_mu = (1/2)(1 + eta_nu)/(1 - eta_nu); the result has mean e^(-1/2).
[[nodiscard]] CircleMeasure lambda_map(const CircleMeasure& nu);
/// Half-line counterpart with u_mu = (1/2)(eta_nu + 1)/(eta_nu - 1).
[[nodiscard]] HalfLineMeasure lambda_map_halfline(const HalfLineMeasure& nu);

struct LambdaInverseOptions {
  std::size_t grid = 512;
  RadialSchedule schedule{};
  // Evaluate at this radius instead of taking the radial limit.
  std::optional<double> fixed_radius;
};

/// Density of nu recovered from Re u on the boundary. Throws MeanMismatch.
[[nodiscard]] DensityTable lambda_map_inverse(const CircleMeasure& mu, const LambdaInverseOptions& options = {});

/// (mu^{free t+1})^{boolean 1/(t+1)} through a single fixed point.
[[nodiscard]] CircleMeasure mt_map(const CircleMeasure& mu, double t);
[[nodiscard]] HalfLineMeasure mt_map_halfline(const HalfLineMeasure& mu, double t);

struct GridSpec {
  int radial = 4;
  int angular = 32;
  double max_radius = 0.9;
};

/// Radii max_radius*i/radial and angles 2 pi j/angular; doubling either count keeps every old point.
[[nodiscard]] std::vector<cplx> polar_grid(const GridSpec& g);
/// n points spread evenly over [a, b] on the real axis.
[[nodiscard]] std::vector<cplx> segment_grid(int n, double a, double b);
/// Upper half-plane points with moduli in [r0, r1] and arguments in (0, pi).
[[nodiscard]] std::vector<cplx> halfplane_grid(int radial, int angular, double r0, double r1);

struct ThmResidualReport {
  std::vector<cplx> grid;
  std::vector<double> residuals;
  double max_residual = 0.0;
  std::string parameters;
};

/// |Sigma_lambda(eta_{nu x lambda_t}(z)) - z/eta_{M_t(Lambda nu)}(z)| over the grid.
[[nodiscard]] ThmResidualReport verify_thm11(const CircleMeasure& nu, double t, const GridSpec& grid = {});
[[nodiscard]] ThmResidualReport verify_thm11(const CircleMeasure& nu, double t, const std::vector<cplx>& points);

/// Max |eta_{M_{t+s}}(z) - eta_{M_t(M_s)}(z)| over a 64-point grid with |z| <= 0.9.
[[nodiscard]] double verify_thm_semigroup(const CircleMeasure& mu, double t, double s);

[[nodiscard]] ThmResidualReport verify_thm45(const HalfLineMeasure& nu, double t, const std::vector<cplx>& points);

struct SeriesCheck {
  double max_difference = 0.0;
  std::size_t order = 0;
  int k = 1;
  TruncatedSeries lhs = TruncatedSeries::zero(1);
  TruncatedSeries rhs = TruncatedSeries::zero(1);
};

/// Sigma_rho against Sigma_nu(eta_mu(z)) through order floor(N/k) k, rho the subordination distribution.
[[nodiscard]] SeriesCheck verify_cor313(const CircleMeasure& mu, const CircleMeasure& nu, std::size_t order = 8);

}  // namespace freemult
