#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "freemult/measures.hpp"

namespace testing {

using freemult::cplx;
inline constexpr double kPi = std::numbers::pi;

/// Random atomic measure with 1..max_atoms atoms.
inline freemult::CircleMeasure random_atomic(std::mt19937_64& rng, int max_atoms = 4, double min_mean = 0.0) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  for (;;) {
    std::vector<freemult::Atom> atoms(static_cast<std::size_t>(count(rng)));
    double total = 0.0;
    for (auto& a : atoms) {
      a.position = angle(rng);
      a.weight = weight(rng);
      total += a.weight;
    }
    for (auto& a : atoms) a.weight /= total;
    auto mu = freemult::CircleMeasure::atomic(atoms);
    if (std::abs(freemult::mean(mu)) >= min_mean) return mu;
  }
}

inline freemult::HalfLineMeasure random_halfline_atomic(std::mt19937_64& rng, int max_atoms = 3) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> loc(-1.5, 1.5);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::vector<freemult::Atom> atoms(static_cast<std::size_t>(count(rng)));
  double total = 0.0;
  for (auto& a : atoms) {
    a.position = std::exp(loc(rng));
    a.weight = weight(rng);
    total += a.weight;
  }
  for (auto& a : atoms) a.weight /= total;
  return freemult::HalfLineMeasure::atomic(atoms);
}

inline cplx random_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

inline freemult::TruncatedSeries random_series(std::mt19937_64& rng, std::size_t order, std::size_t first) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> c(order + 1);
  for (std::size_t n = first; n <= order; ++n) c[n] = cplx(g(rng), g(rng)) / static_cast<double>(n + 1);
  return {c, order};
}

}  // namespace testing
