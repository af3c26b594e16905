#include <doctest.h>

#include "freemult/convolution.hpp"
#include "freemult/density.hpp"
#include "freemult/errors.hpp"
#include "freemult/semigroups.hpp"
#include "support.hpp"

using namespace freemult;
using testing::cplx;
using testing::kPi;

TEST_CASE("semigroups: normal eta inverts Phi_t") {
  std::mt19937_64 rng(31);
  for (double t : {0.25, 1.0, 3.0, 6.0})
    for (int k = 0; k < 20; ++k) {
      const cplx z = testing::random_disk_point(rng, 0.98);
      const cplx e = circle_normal_eta(t, z);
      CHECK(std::abs(circle_phi(t, e) - z) < 1e-12);
    }
}

TEST_CASE("semigroups: normal laws form a free convolution semigroup") {
  const auto a = CircleMeasure::normal(0.4);
  const auto b = CircleMeasure::normal(0.9);
  const cplx z(0.5, -0.3);
  CHECK(std::abs(eta_eval(free_multiply(a, b), z) - circle_normal_eta(1.3, z)) < 1e-12);
  const auto ha = HalfLineMeasure::normal(0.4);
  const auto hb = HalfLineMeasure::normal(0.9);
  const cplx w(-0.5, 0.7);
  CHECK(std::abs(eta_eval(free_multiply(ha, hb), w) - halfline_normal_eta(1.3, w)) < 1e-10);
}

TEST_CASE("semigroups: half-line normal eta inverts its Phi") {
  for (cplx z : {cplx(-0.5, 0.0), cplx(-3.0, 0.0), cplx(-1.0, 0.5), cplx(0.5, 0.5), cplx(2.0, 0.01), cplx(-0.2, -1.0)}) {
    const cplx e = halfline_normal_eta(2.0, z);
    CHECK(std::abs(halfline_phi(2.0, e) - z) < 1e-11 * std::max(1.0, std::abs(z)));
    CHECK(e.imag() * z.imag() >= 0.0);
  }
}

TEST_CASE("semigroups: Lambda sends the unit mass and Haar to explicit laws") {
  const cplx z(0.3, 0.4);
  const auto ld = lambda_map(CircleMeasure::dirac(0.0));
  CHECK(std::abs(mean(ld) - std::exp(-0.5)) < 1e-14);
  const auto lh = lambda_map(CircleMeasure::haar());
  CHECK(std::abs(eta_eval(lh, z) - std::exp(-0.5) * z) < 1e-15);
}

TEST_CASE("semigroups property: Lambda fixes the mean at e^{-1/2}") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 20; ++k) CHECK(std::abs(mean(lambda_map(testing::random_atomic(rng))) - std::exp(-0.5)) < 1e-12);
}

TEST_CASE("semigroups: Lambda inverse recovers a density") {
  const auto nu = CircleMeasure::normal(2.0);
  LambdaInverseOptions opt;
  opt.grid = 64;
  const auto table = lambda_map_inverse(lambda_map(nu), opt);
  for (std::size_t i = 0; i < table.abscissae.size(); ++i)
    CHECK(std::abs(table.values[i] - circle_normal_density_at(2.0, table.abscissae[i])) < 1e-6);
  try {
    (void)lambda_map_inverse(CircleMeasure::normal(2.0), opt);
    FAIL("expected MeanMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MeanMismatch);
  }
}

TEST_CASE("semigroups property: M_t preserves the mean and composes") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 4; ++k) {
    const auto mu = lambda_map(testing::random_atomic(rng));
    for (double t : {0.3, 1.0, 2.0}) CHECK(std::abs(mean(mt_map(mu, t)) - mean(mu)) < 1e-12);
    CHECK(verify_thm_semigroup(mu, 0.4, 0.6) < 1e-10);
  }
}

TEST_CASE("semigroups: M_1 is the bp map") {
  const auto mu = lambda_map(CircleMeasure::atomic({{0.0, 0.5}, {0.6, 0.5}}));
  const cplx z(0.4, -0.1);
  CHECK(std::abs(eta_eval(mt_map(mu, 1.0), z) - eta_eval(bp_map(mu), z)) < 1e-13);
}

TEST_CASE("semigroups: subordination identity with the normal law") {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 3; ++k) {
    const auto nu = testing::random_atomic(rng);
    CHECK(verify_thm11(nu, 1.5, GridSpec{2, 8, 0.9}).max_residual < 1e-9);
  }
  CHECK_THROWS_AS((void)verify_thm11(CircleMeasure::haar(), 1.0, std::vector<cplx>{cplx(0.99, 0.0)}), Error);
}

TEST_CASE("semigroups: half-line identity on the negative axis and upper half-plane") {
  auto pts = segment_grid(16, -4.0, -0.05);
  const auto upper = halfplane_grid(3, 8, 0.25, 4.0);
  pts.insert(pts.end(), upper.begin(), upper.end());
  for (const auto& nu : {HalfLineMeasure::dirac(1.0), HalfLineMeasure::atomic({{0.5, 0.5}, {2.0, 0.5}})})
    CHECK(verify_thm45(nu, 1.0, pts).max_residual < 1e-8);
}

TEST_CASE("semigroups: modified Sigma identity in the vanishing-mean regime") {
  const auto chk = verify_cor313(CircleMeasure::roots_of_unity(2), CircleMeasure::atomic({{0.0, 0.75}, {kPi / 2, 0.25}}), 8);
  CHECK(chk.k == 2);
  CHECK(chk.max_difference < 1e-8);
  const auto plain = verify_cor313(CircleMeasure::normal(0.5), CircleMeasure::atomic({{0.2, 0.5}, {1.0, 0.5}}), 8);
  CHECK(plain.k == 1);
  CHECK(plain.max_difference < 1e-8);
}

TEST_CASE("semigroups: grids") {
  const auto g = polar_grid({4, 32, 0.9});
  CHECK(g.size() == 128);
  double rmax = 0.0;
  for (auto z : g) rmax = std::max(rmax, std::abs(z));
  CHECK(rmax == doctest::Approx(0.9));
  const auto coarse = polar_grid({2, 16, 0.9});
  for (auto z : coarse) CHECK(std::find_if(g.begin(), g.end(), [&](cplx w) { return std::abs(w - z) < 1e-15; }) != g.end());
  for (auto z : halfplane_grid(3, 5, 0.5, 2.0)) CHECK(z.imag() > 0.0);
}
