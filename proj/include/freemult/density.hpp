#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freemult/density_table.hpp"
#include "freemult/measures.hpp"
#include "freemult/radial.hpp"

namespace freemult {

struct AngleGrid {
  std::vector<double> abscissae;
  std::vector<double> weights;
};

/// n equispaced angles starting at -pi with periodic trapezoid weights.
[[nodiscard]] AngleGrid uniform_circle_grid(std::size_t n);
/// n angles theta_max cos(pi (j + 1/2)/n) in increasing order; midpoint weights in the cosine variable.
[[nodiscard]] AngleGrid graded_arc_grid(double theta_max, std::size_t n);

/// Boundary density by radial limits of (1 + eta)/(1 - eta) at e^{-i theta}.
/// Points where the limit diverges hold +infinity and are left out of the mass.
[[nodiscard]] DensityTable poisson_density(const CircleMeasure& mu, const AngleGrid& grid,
                                           const RadialSchedule& schedule = {});
[[nodiscard]] DensityTable poisson_density(const CircleMeasure& mu, const std::vector<double>& angles,
                                           const RadialSchedule& schedule = {});

// ---- circle normal law ----

struct Arc {
  double lo = 0.0;
  double hi = 0.0;
  bool full = false;
};

[[nodiscard]] Arc circle_normal_support(double t);
/// Root of Phi_t(x) = 1 on (0, 1).
[[nodiscard]] double circle_normal_x1(double t);
/// -1 for t <= 4, otherwise the root of Phi_t(x) = -1 on (-1, 0).
[[nodiscard]] double circle_normal_x2(double t);
/// (2 - t + sqrt(t^2 - 4t))/2 with the principal complex root.
[[nodiscard]] cplx circle_normal_z1(double t);
[[nodiscard]] cplx circle_normal_z2(double t);
/// arccos(1 - t/2) for t < 4, pi otherwise.
[[nodiscard]] double circle_normal_theta1(double t);

/// r in (0, 1] with |Phi_t(r e^{i phi})| = 1 on the traced branch. Throws RootBracketFailure past the arc end.
[[nodiscard]] double circle_boundary_radius(double t, double phi);
/// arg Phi_t(r e^{i phi}) continued from phi.
[[nodiscard]] double circle_image_angle(double t, double r, double phi);

struct BoundarySample {
  double theta = 0.0;
  double r = 0.0;
  cplx z;
  cplx image;
};

struct BoundaryCurve {
  double t = 0.0;
  std::vector<BoundarySample> samples;
  // Circle: x1, x2, z1, z2 and the arc end found by bisection.
  double x1 = 0.0;
  double x2 = 0.0;
  cplx z1;
  cplx z2;
  double traced_theta1 = 0.0;
  double traced_image_end = 0.0;
  // Half-line: endpoints of the curve and the images t1 < t2.
  double endpoint_inner = 0.0;
  double endpoint_outer = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double theta0 = 0.0;
};

[[nodiscard]] BoundaryCurve circle_normal_boundary(double t, std::size_t n);

enum class DensityRoute { Boundary, Poisson };

/// Boundary-correspondence value at a point angle (0 outside the support).
[[nodiscard]] double circle_normal_density_at(double t, double theta);
/// Default grid: graded on the support arc for t <= 4, uniform otherwise.
[[nodiscard]] AngleGrid circle_normal_grid(double t, std::size_t n);
[[nodiscard]] DensityTable circle_normal_density(double t, const AngleGrid& grid, DensityRoute route = DensityRoute::Boundary,
                                                 const RadialSchedule& schedule = {});

// ---- half-line normal law at t = 2 ----

/// Root of sin(theta) = theta (1 - cos(theta)) in (0, pi).
[[nodiscard]] double halfline_theta0();
[[nodiscard]] double halfline_t1();
[[nodiscard]] double halfline_t2();
/// Angle of the point of gamma_0 with modulus r in [2 - sqrt 3, 2 + sqrt 3].
[[nodiscard]] double halfline_curve_theta(double r);
/// f(r, theta) = arg Phi_lambda(r e^{i theta}) on the continuous branch.
[[nodiscard]] double halfline_arg_f(double r, double theta);

[[nodiscard]] BoundaryCurve halfline_gamma0(std::size_t n);
/// Density at the point x, zero outside (t1, t2).
[[nodiscard]] double halfline_normal_density_at(double x);
[[nodiscard]] DensityTable halfline_normal_density(const std::vector<double>& xs);
/// n cosine-graded points on (t1, t2) with midpoint weights in the cosine variable.
[[nodiscard]] DensityTable halfline_normal_density(std::size_t n);
/// Integral of a moment of the density by tanh-sinh quadrature over the support.
[[nodiscard]] double halfline_normal_moment(int power);

// ---- level curves ----

enum class LevelKind { ModulusPhi, ArgPhiLambda };

struct Window {
  double r_min = 0.0;
  double r_max = 1.0;
  double theta_min = -3.141592653589793;
  double theta_max = 3.141592653589793;
};

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
};

using Polyline = std::vector<PolarPoint>;

struct LevelCurveSet {
  LevelKind which = LevelKind::ModulusPhi;
  double t = 0.0;
  std::vector<double> levels;
  std::vector<std::vector<Polyline>> polylines;  // per level
  Window window;
};

/// Traces each level by monotone slice root finding. Throws EmptyLevel.
[[nodiscard]] LevelCurveSet level_curves(LevelKind which, double t, const std::vector<double>& levels, const Window& window,
                                         std::size_t resolution);
/// Residual of a point against its level equation.
[[nodiscard]] double level_residual(LevelKind which, double t, double level, const PolarPoint& p);

struct ComponentReport {
  std::vector<double> levels;
  std::vector<std::size_t> polygon_sizes;
  std::size_t nesting_samples = 0;
  std::size_t nesting_failures = 0;
  std::size_t component_samples = 0;
  std::size_t component_failures = 0;
  std::size_t sign_samples = 0;
  std::size_t sign_failures = 0;
  bool gamma0_off_axis = true;
  [[nodiscard]] bool ok() const {
    return nesting_failures == 0 && component_failures == 0 && sign_failures == 0 && gamma0_off_axis;
  }
};

/// Nesting of the domains {f < c} and the sign of Im Phi_lambda on their differences.
[[nodiscard]] ComponentReport arg_phi_components(const std::vector<double>& levels, std::size_t samples = 500,
                                                 std::size_t resolution = 800);
/// Levels 0, -pi, ..., -(2 k_max - 1) pi.
[[nodiscard]] ComponentReport arg_phi_components(int k_max, std::size_t samples = 500);

}  // namespace freemult
