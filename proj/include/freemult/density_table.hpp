#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace freemult {

/// Sampled density with quadrature weights. Infinite values mark points where
/// the boundary limit diverged; they are left out of the mass.
struct DensityTable {
  std::vector<double> abscissae;
  std::vector<double> values;
  std::vector<double> weights;
  double mass = 0.0;
  std::string note;

  void update_mass() {
    mass = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (std::isfinite(values[i])) mass += weights[i] * values[i];
  }

  [[nodiscard]] std::size_t divergent_count() const {
    std::size_t n = 0;
    for (double v : values)
      if (std::isinf(v)) ++n;
    return n;
  }
};

}  // namespace freemult
