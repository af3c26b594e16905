#include <doctest.h>

#include "freemult/convolution.hpp"
#include "freemult/errors.hpp"
#include "support.hpp"

using namespace freemult;
using testing::cplx;
using testing::kPi;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("convolution: point masses multiply") {
  const auto p = free_multiply(CircleMeasure::dirac(0.3), CircleMeasure::dirac(1.1));
  const cplx z(0.4, -0.2);
  CHECK(std::abs(eta_eval(p, z) - std::polar(1.0, 1.4) * z) < 1e-14);
  CHECK(std::abs(mean(p) - std::polar(1.0, 1.4)) < 1e-14);
}

TEST_CASE("convolution: the unit point mass is neutral") {
  const auto mu = CircleMeasure::atomic({{0.3, 0.6}, {2.0, 0.4}});
  const auto p = free_multiply(CircleMeasure::dirac(0.0), mu);
  CHECK(eta_series(p, 10).max_abs_difference(eta_series(mu, 10)) < 1e-12);
}

TEST_CASE("convolution: Haar absorbs") {
  const auto p = free_multiply(CircleMeasure::haar(), CircleMeasure::normal(1.0));
  CHECK(std::abs(eta_eval(p, {0.5, 0.3})) < 1e-14);
}

TEST_CASE("convolution property: certificates and symmetry on random pairs") {
  std::mt19937_64 rng(21);
  for (int pair = 0; pair < 8; ++pair) {
    const auto mu = testing::random_atomic(rng);
    const auto nu = testing::random_atomic(rng);
    for (int k = 0; k < 25; ++k) {
      const cplx z = testing::random_disk_point(rng, 0.95);
      const auto a = subordinate(mu, nu, z);
      const auto b = subordinate(nu, mu, z);
      CHECK(a.r_fix < 1e-10);
      CHECK(a.r_prod < 1e-10);
      CHECK(std::abs(a.omega1) <= std::abs(z) + 1e-12);
      CHECK(std::abs(a.omega2) <= std::abs(z) + 1e-12);
      CHECK(std::abs(a.eta_product - b.eta_product) < 1e-10);
      CHECK(std::abs(a.eta_product) <= std::abs(z) + 1e-12);
    }
  }
}

TEST_CASE("convolution property: associativity on series") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 3; ++k) {
    const auto a = testing::random_atomic(rng, 3, 0.3);
    const auto b = testing::random_atomic(rng, 3, 0.3);
    const auto c = testing::random_atomic(rng, 3, 0.3);
    const auto left = free_multiply(free_multiply(a, b), c);
    const auto right = free_multiply(a, free_multiply(b, c));
    CHECK(eta_series(left, 6).max_abs_difference(eta_series(right, 6)) < 1e-9);
  }
}

TEST_CASE("convolution: subordination outside the disk is rejected") {
  const auto d = CircleMeasure::dirac(0.0);
  CHECK(kind_of([&] { (void)subordinate(d, d, 1.0); }) == ErrorKind::OutsideDomain);
  CHECK(kind_of([&] { (void)subordinate(d, d, {0.8, 0.8}); }) == ErrorKind::OutsideDomain);
}

TEST_CASE("convolution: Boolean products and powers") {
  const auto mu = CircleMeasure::atomic({{0.2, 0.7}, {1.5, 0.3}});
  const auto nu = CircleMeasure::normal(0.8);
  const auto b = boolean_multiply(mu, nu);
  const cplx z(0.3, 0.5);
  CHECK(std::abs(k_transform(b, z) - k_transform(mu, z) * k_transform(nu, z)) < 1e-12);
  const auto p2 = boolean_power(nu, 2.0);
  CHECK(std::abs(k_transform(p2, z) - std::pow(k_transform(nu, z), 2.0)) < 1e-12);
  CHECK(p2.canonical());
  CHECK(std::abs(eta_eval(boolean_power(nu, 0.0), z) - z) < 1e-15);
  CHECK(std::abs(eta_eval(boolean_power(nu, 1.0), z) - eta_eval(nu, z)) < 1e-15);
  CHECK(!boolean_power(mu, 0.5).canonical());
  CHECK(kind_of([] { (void)boolean_power(CircleMeasure::roots_of_unity(2), 0.5); }) == ErrorKind::ZeroMean);
  CHECK(kind_of([&] { (void)boolean_power(nu, -1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("convolution: free powers") {
  const auto n = CircleMeasure::normal(0.6);
  const auto p = free_power(n, 2.5);
  const cplx z(0.2, 0.6);
  CHECK(std::abs(eta_eval(p, z) - eta_eval(CircleMeasure::normal(1.5), z)) < 1e-12);
  const auto mu = CircleMeasure::atomic({{0.1, 0.8}, {-0.3, 0.2}});
  const auto rot = CircleMeasure::rotated(n, 0.0);
  CHECK(std::abs(eta_eval(free_power(rot, 2.0), z) - eta_eval(free_multiply(rot, rot), z)) < 1e-12);
  CHECK(kind_of([&] { (void)free_power(n, 0.5); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { (void)free_power(mu, 2.0); }) == ErrorKind::NonPositiveMeanBranch);
  CHECK(kind_of([] { (void)free_power(CircleMeasure::haar(), 2.0); }) == ErrorKind::ZeroMean);
}

TEST_CASE("convolution: subordination distributions") {
  const auto mu = CircleMeasure::normal(0.5);
  const auto nu = CircleMeasure::atomic({{0.0, 0.6}, {2.0, 0.4}});
  const auto s = subordination_distribution(mu, nu);
  CHECK(s.principal);
  const cplx z(0.3, -0.4);
  CHECK(std::abs(eta_eval(s.measure, z) - subordinate(mu, nu, z).omega1) < 1e-14);
  CHECK(std::abs(mean(s.measure) - mean(nu)) < 1e-14);
  const auto h = subordination_distribution(CircleMeasure::haar(), nu);
  CHECK(!h.principal);
  CHECK(h.measure.is_haar());
}

TEST_CASE("convolution: bp map fixes the normal law's Sigma") {
  const auto d = CircleMeasure::atomic({{0.0, 0.5}, {0.4, 0.5}});
  const auto m = bp_map(d);
  const cplx z(0.3, 0.2);
  // eta_m^{-1}(w)/w = k_d(w)
  const cplx w = eta_eval(m, z);
  CHECK(std::abs(z / w - k_transform(d, w)) < 1e-11);
}

TEST_CASE("convolution property: half-line certificates and conjugate symmetry") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(0.05, kPi - 0.05);
  std::uniform_real_distribution<double> rad(0.1, 3.0);
  for (int pair = 0; pair < 5; ++pair) {
    const auto mu = testing::random_halfline_atomic(rng);
    const auto nu = testing::random_halfline_atomic(rng);
    for (int k = 0; k < 20; ++k) {
      const cplx z = std::polar(rad(rng), ang(rng));
      const auto p = subordinate_halfline(mu, nu, z);
      CHECK(p.r_fix < 1e-9);
      CHECK(p.r_prod < 1e-9);
      const auto q = subordinate_halfline(mu, nu, std::conj(z));
      CHECK(std::abs(q.eta_product - std::conj(p.eta_product)) < 1e-12);
    }
  }
}

TEST_CASE("convolution: half-line products and powers") {
  const auto a = HalfLineMeasure::dirac(2.0);
  const auto b = HalfLineMeasure::dirac(0.75);
  const cplx z(-0.4, 0.3);
  CHECK(std::abs(eta_eval(free_multiply(a, b), z) - 1.5 * z) < 1e-12);
  const auto n = HalfLineMeasure::normal(0.5);
  CHECK(std::abs(eta_eval(free_power_halfline(n, 3.0), z) - eta_eval(HalfLineMeasure::normal(1.5), z)) < 1e-11);
  const auto bp = boolean_power_halfline(n, 0.5);
  CHECK(std::abs(std::exp(log_k(bp, z)) - std::sqrt(z / eta_eval(n, z))) < 1e-12);
  CHECK(kind_of([&] { (void)boolean_power_halfline(n, 1.5); }) == ErrorKind::BooleanPowerOutOfRange);
  CHECK(kind_of([&] { (void)subordinate_halfline(a, b, 2.0); }) == ErrorKind::OutsideDomain);
}
