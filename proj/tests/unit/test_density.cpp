#include <doctest.h>

#include "freemult/density.hpp"
#include "freemult/errors.hpp"
#include "freemult/semigroups.hpp"
#include "support.hpp"

using namespace freemult;
using testing::cplx;
using testing::kPi;

TEST_CASE("density: closed-form anchors of the circle normal law") {
  CHECK(std::abs(circle_normal_x1(1.0) - 0.35217506066011668) < 1e-15);
  CHECK(std::abs(circle_normal_density_at(1.0, 0.0) - 0.33219675835408500) < 1e-14);
  CHECK(circle_normal_x2(2.0) == -1.0);
  const double x2 = circle_normal_x2(5.0);
  CHECK(std::abs(std::abs(circle_phi(5.0, x2)) - 1.0) < 1e-12);
  CHECK(x2 > -1.0);
  CHECK(std::abs(std::abs(circle_normal_z1(2.0)) - 1.0) < 1e-15);
  CHECK(std::abs(circle_normal_z1(2.0) - cplx(0.0, 1.0)) < 1e-15);
  CHECK(circle_normal_theta1(2.0) == doctest::Approx(kPi / 2));
  const auto arc = circle_normal_support(2.0);
  CHECK(arc.hi == doctest::Approx(1.0 + kPi / 2));
  CHECK(!arc.full);
  CHECK(circle_normal_support(4.5).full);
}

TEST_CASE("density: boundary curve invariants") {
  for (double t : {0.5, 2.0, 3.9, 6.0}) {
    const auto c = circle_normal_boundary(t, 128);
    CHECK(c.samples.front().r == doctest::Approx(c.x1).epsilon(1e-12));
    for (const auto& s : c.samples) CHECK(std::abs(std::abs(s.image) - 1.0) < 1e-10);
    if (t < 4.0) {
      CHECK(std::abs(c.traced_theta1 - std::acos(1.0 - 0.5 * t)) < 1e-10);
      CHECK(c.samples.back().r == doctest::Approx(1.0));
    } else {
      CHECK(c.samples.back().r == doctest::Approx(-c.x2).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS((void)circle_normal_boundary(1.0, 4), Error);
  try {
    (void)circle_boundary_radius(1.0, 2.0);
    FAIL("expected RootBracketFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RootBracketFailure);
  }
}

TEST_CASE("density property: the two routes agree") {
  RadialSchedule deep{6, 26, 3};
  for (double t : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    const auto arc = circle_normal_support(t);
    std::vector<double> angles;
    for (int j = 0; j < 24; ++j) angles.push_back(arc.hi * (-0.97 + 1.94 * j / 23.0));
    const auto poisson = poisson_density(CircleMeasure::normal(t), angles, deep);
    for (std::size_t i = 0; i < angles.size(); ++i)
      CHECK(std::abs(poisson.values[i] - circle_normal_density_at(t, angles[i])) < 1e-6);
  }
}

TEST_CASE("density property: mass, symmetry and first moment") {
  for (double t : {0.5, 1.0, 3.0, 4.0, 7.0}) {
    const auto table = circle_normal_density(t, circle_normal_grid(t, 2048));
    CHECK(std::abs(table.mass - 1.0) < 1e-6);
    cplx m1 = 0.0;
    for (std::size_t i = 0; i < table.abscissae.size(); ++i)
      m1 += table.weights[i] * table.values[i] * std::polar(1.0, table.abscissae[i]);
    CHECK(std::abs(m1 - std::exp(-0.5 * t)) < 1e-5);
    CHECK(std::abs(circle_normal_density_at(t, 0.4) - circle_normal_density_at(t, -0.4)) < 1e-15);
  }
}

TEST_CASE("density: Haar and atoms under the Poisson route") {
  const auto h = poisson_density(CircleMeasure::haar(), uniform_circle_grid(64));
  for (double v : h.values) CHECK(v == doctest::Approx(1.0 / (2.0 * kPi)));
  CHECK(h.mass == doctest::Approx(1.0));
  const auto d = poisson_density(CircleMeasure::dirac(0.0), std::vector<double>{0.0, 1.0, -2.0});
  CHECK(std::isinf(d.values[0]));
  CHECK(d.divergent_count() == 1);
  CHECK(std::abs(d.values[1]) < 1e-8);
}

TEST_CASE("density: half-line anchors") {
  CHECK(std::abs(halfline_theta0() - 1.3065423741888063) < 1e-15);
  CHECK(std::abs(halfline_t1() - 0.047405894) < 1e-9);
  CHECK(std::abs(halfline_t2() - 21.0944232) < 1e-7);
  CHECK(std::abs(halfline_t1() * halfline_t2() - 1.0) < 1e-14);
  const auto c = halfline_gamma0(200);
  CHECK(std::abs(c.endpoint_inner - (2.0 - std::sqrt(3.0))) < 1e-9);
  CHECK(std::abs(c.endpoint_outer - (2.0 + std::sqrt(3.0))) < 1e-9);
  for (const auto& s : c.samples) {
    CHECK(s.z.imag() > 0.0);
    CHECK(std::abs(halfline_arg_f(s.r, s.theta)) < 1e-12);
  }
}

TEST_CASE("density: half-line law has unit mass and mean e") {
  CHECK(std::abs(halfline_normal_moment(0) - 1.0) < 1e-9);
  CHECK(std::abs(halfline_normal_moment(1) - std::exp(1.0)) < 1e-8);
  CHECK(halfline_normal_density_at(0.01) == 0.0);
  CHECK(halfline_normal_density_at(30.0) == 0.0);
  const auto table = halfline_normal_density(512);
  CHECK(std::abs(table.mass - 1.0) < 1e-8);
  for (double v : table.values) CHECK(v > 0.0);
}

TEST_CASE("density property: curve angle inverts the modulus relation") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(2.0 - std::sqrt(3.0), 2.0 + std::sqrt(3.0));
  for (int k = 0; k < 50; ++k) {
    const double r = u(rng);
    const double th = halfline_curve_theta(r);
    CHECK(std::abs(halfline_arg_f(r, th)) < 1e-10);
    CHECK(th <= halfline_theta0());
  }
}

TEST_CASE("density: modulus level curves") {
  const Window w{0.0, 2.0, -kPi, kPi};
  const auto set = level_curves(LevelKind::ModulusPhi, 2.0, {1.0, 0.5}, w, 200);
  REQUIRE(set.polylines.size() == 2);
  for (std::size_t l = 0; l < 2; ++l)
    for (const auto& line : set.polylines[l])
      for (const auto& p : line) CHECK(level_residual(LevelKind::ModulusPhi, 2.0, set.levels[l], p) < 1e-8);
  const auto five = level_curves(LevelKind::ModulusPhi, 5.0, {1.0}, {0.0, 1.0, -kPi, kPi}, 200);
  bool crossing = false;
  for (const auto& line : five.polylines[0])
    for (const auto& p : line)
      if (std::abs(std::abs(p.theta) - kPi) < 1e-12) crossing = std::abs(p.r + circle_normal_x2(5.0)) < 1e-9;
  CHECK(crossing);
  CHECK_THROWS_AS((void)level_curves(LevelKind::ModulusPhi, 2.0, {-1.0}, w, 50), Error);
}

TEST_CASE("density: argument level curves") {
  const Window w{0.0, 4.0, 0.0, kPi};
  const auto set = level_curves(LevelKind::ArgPhiLambda, 2.0, {0.0, -kPi, 1.0}, w, 300);
  for (std::size_t l = 0; l < set.levels.size(); ++l)
    for (const auto& line : set.polylines[l])
      for (const auto& p : line) CHECK(level_residual(LevelKind::ArgPhiLambda, 2.0, set.levels[l], p) < 1e-8);
  try {
    (void)level_curves(LevelKind::ArgPhiLambda, 2.0, {4.0}, w, 50);
    FAIL("expected EmptyLevel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyLevel);
  }
}

TEST_CASE("density: components of the argument levels") {
  const auto rep = arg_phi_components(2, 300);
  CHECK(rep.ok());
  CHECK(rep.nesting_samples > 0);
  CHECK(rep.component_samples > 0);
  CHECK(rep.sign_samples > 0);
}

TEST_CASE("density: grids") {
  const auto u = uniform_circle_grid(16);
  double s = 0.0;
  for (double w : u.weights) s += w;
  CHECK(s == doctest::Approx(2.0 * kPi));
  const auto g = graded_arc_grid(2.0, 64);
  double gs = 0.0;
  for (double w : g.weights) gs += w;
  CHECK(gs == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(std::is_sorted(g.abscissae.begin(), g.abscissae.end()));
  CHECK_THROWS_AS((void)uniform_circle_grid(1), Error);
}

TEST_CASE("density: half-line law has square-root edges") {
  const double t1 = halfline_t1();
  const double t2 = halfline_t2();
  CHECK(halfline_normal_density_at(t2 - 1e-5) < 1e-4);
  const double eps = 1e-7;
  const double ratio = halfline_normal_density_at(t1 + 4.0 * eps) / halfline_normal_density_at(t1 + eps);
  CHECK(ratio == doctest::Approx(2.0).epsilon(1e-2));
  const double right = halfline_normal_density_at(t2 - 4.0 * eps) / halfline_normal_density_at(t2 - eps);
  CHECK(right == doctest::Approx(2.0).epsilon(1e-2));
}
