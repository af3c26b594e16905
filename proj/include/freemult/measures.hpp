#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freemult/series.hpp"

namespace freemult {

using ComplexFunction = std::function<cplx(cplx)>;

struct Atom {
  double position = 0.0;  // angle in [0, 2pi) on the circle, location > 0 on the half-line
  double weight = 0.0;
};

/// Evaluators describing a measure that has no closed form.
///
/// `quotient` is eta(z)/z and must be defined at 0 (where it equals the mean).
/// `eta` defaults to z * quotient(z). `log_k` is log(z/eta(z)) on a branch
/// continuous from -Log(mean) at 0; when absent it is obtained by continuation
/// along the segment [0, z].
struct DerivedTransforms {
  ComplexFunction eta;
  ComplexFunction quotient;
  ComplexFunction log_k;
  std::string note;
  bool canonical = true;
};

class CircleMeasure;

namespace circle {
struct Atomic {
  std::vector<Atom> atoms;
};
struct Haar {};
struct Normal {
  double t = 0.0;
};
struct Rotated {
  std::shared_ptr<const CircleMeasure> base;
  double phase = 0.0;
};
struct Derived {
  std::shared_ptr<const DerivedTransforms> fns;
};
}  // namespace circle

/// Probability measure on the unit circle; immutable and cheap to copy.
class CircleMeasure {
 public:
  using Variant = std::variant<circle::Atomic, circle::Haar, circle::Normal, circle::Rotated, circle::Derived>;

  /// Weights must be positive and sum to 1 within 1e-9; they are renormalized and angles reduced to [0, 2pi).
  static CircleMeasure atomic(std::vector<Atom> atoms);
  static CircleMeasure dirac(double angle);
  /// The k-th roots of unity with equal weights.
  static CircleMeasure roots_of_unity(int k);
  static CircleMeasure haar();
  static CircleMeasure normal(double t);
  /// Boolean rotation: eta(z) -> e^(i phase) eta(z).
  static CircleMeasure rotated(const CircleMeasure& base, double phase);
  static CircleMeasure derived(DerivedTransforms fns);

  [[nodiscard]] const Variant& variant() const noexcept { return *v_; }
  [[nodiscard]] std::string describe() const;
  [[nodiscard]] bool canonical() const noexcept;
  [[nodiscard]] bool is_haar() const noexcept { return std::holds_alternative<circle::Haar>(*v_); }

  struct SeriesCache;
  [[nodiscard]] SeriesCache& cache() const { return *cache_; }

 private:
  explicit CircleMeasure(Variant v);
  std::shared_ptr<const Variant> v_;
  std::shared_ptr<SeriesCache> cache_;
};

namespace halfline {
struct Atomic {
  std::vector<Atom> atoms;
};
struct Normal {
  double t = 0.0;
};
struct Derived {
  std::shared_ptr<const DerivedTransforms> fns;
};
}  // namespace halfline

/// Probability measure on [0, inf) other than the point mass at 0.
class HalfLineMeasure {
 public:
  using Variant = std::variant<halfline::Atomic, halfline::Normal, halfline::Derived>;

  static HalfLineMeasure atomic(std::vector<Atom> atoms);
  static HalfLineMeasure dirac(double location);
  /// Sigma(z) = exp((t/2)(z+1)/(z-1)).
  static HalfLineMeasure normal(double t);
  static HalfLineMeasure derived(DerivedTransforms fns);

  [[nodiscard]] const Variant& variant() const noexcept { return *v_; }
  [[nodiscard]] std::string describe() const;

 private:
  explicit HalfLineMeasure(Variant v);
  std::shared_ptr<const Variant> v_;
};

// Circle transforms. Points must lie in the open unit disk (OutsideDomain otherwise).
[[nodiscard]] cplx psi_eval(const CircleMeasure& mu, cplx z);
[[nodiscard]] cplx eta_eval(const CircleMeasure& mu, cplx z);
/// eta(z)/z, equal to the mean at z = 0.
[[nodiscard]] cplx eta_quotient(const CircleMeasure& mu, cplx z);
/// u(z) = log(z/eta(z)) with u(0) = -Log(mean). Throws ZeroMean or EtaVanishes.
[[nodiscard]] cplx log_k(const CircleMeasure& mu, cplx z);
[[nodiscard]] cplx k_transform(const CircleMeasure& mu, cplx z);
[[nodiscard]] cplx mean(const CircleMeasure& mu);
[[nodiscard]] cplx moment(const CircleMeasure& mu, std::size_t n);

struct CauchySampling {
  double radius = 0.5;
  std::size_t samples = 128;
};

[[nodiscard]] TruncatedSeries eta_series(const CircleMeasure& mu, std::size_t order = kDefaultSeriesOrder);
[[nodiscard]] TruncatedSeries eta_series(const CircleMeasure& mu, std::size_t order, const CauchySampling& sampling);
[[nodiscard]] TruncatedSeries psi_series(const CircleMeasure& mu, std::size_t order = kDefaultSeriesOrder);
/// Sigma(z) = eta^{-1}(z)/z. Throws ZeroMean when |mean| <= 1e-10.
[[nodiscard]] TruncatedSeries sigma_series(const CircleMeasure& mu, std::size_t order = kDefaultSeriesOrder);

struct MomentData {
  std::vector<cplx> moments;  // moments[n-1] = m_n
  std::optional<int> k_order;
};

inline constexpr double kMomentThreshold = 1e-10;

[[nodiscard]] MomentData moment_data(const CircleMeasure& mu, std::size_t order = kDefaultSeriesOrder);

/// Branch generator of the modified S-transform; throws HaarLike when no moment exceeds the threshold.
[[nodiscard]] BranchedSeries modified_s(const CircleMeasure& mu, std::size_t order = kDefaultSeriesOrder);
/// S^(j)(z) = chi^(j)(z)(1+z)/z.
[[nodiscard]] cplx modified_s_eval(const BranchedSeries& chi, int j, cplx z);

struct StarCertificate {
  bool member = false;
  double min_modulus = 0.0;
  cplx argmin;
  /// zeros of eta in 0 < |z| < 0.999; -1 when not computed
  int winding = -1;
};

/// Samples |eta| on a 64x64 polar grid up to radius 0.999, then counts zeros of eta
/// off 0 by the argument principle on |z| = 0.999. Member iff min > 1e-10 and no zeros.
[[nodiscard]] StarCertificate certify_star(const CircleMeasure& mu);

// Half-line transforms, defined off [0, inf) and at 0.
[[nodiscard]] cplx psi_eval(const HalfLineMeasure& mu, cplx z);
[[nodiscard]] cplx eta_eval(const HalfLineMeasure& mu, cplx z);
[[nodiscard]] cplx eta_quotient(const HalfLineMeasure& mu, cplx z);
/// Principal log(z/eta(z)).
[[nodiscard]] cplx log_k(const HalfLineMeasure& mu, cplx z);
[[nodiscard]] double mean(const HalfLineMeasure& mu);
[[nodiscard]] TruncatedSeries eta_series(const HalfLineMeasure& mu, std::size_t order = kDefaultSeriesOrder);

using MeasureSpec = std::variant<CircleMeasure, HalfLineMeasure>;

/// Parses a JSON measure description. Throws SpecParse.
[[nodiscard]] MeasureSpec parse_measure_spec(const std::string& text);
[[nodiscard]] MeasureSpec load_measure_spec(const std::string& path);

}  // namespace freemult
