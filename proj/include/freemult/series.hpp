#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace freemult {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultSeriesOrder = 16;

/// Power series c_0 + c_1 v + ... + c_N v^N truncated at order N.
///
/// The expansion variable is v = z when root_index() == 1 and v = w^(1/k)
/// for branched expansions. Arithmetic never reads beyond index N and
/// binary operations require equal orders.
class TruncatedSeries {
 public:
  TruncatedSeries(std::vector<cplx> coeffs, std::size_t order, int root_index = 1);

  static TruncatedSeries zero(std::size_t order);
  static TruncatedSeries constant(cplx value, std::size_t order);
  static TruncatedSeries identity(std::size_t order);

  [[nodiscard]] std::size_t order() const noexcept { return coeffs_.size() - 1; }
  [[nodiscard]] int root_index() const noexcept { return root_index_; }
  [[nodiscard]] std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const cplx& operator[](std::size_t n) const { return coeffs_.at(n); }

  [[nodiscard]] cplx evaluate(cplx v) const noexcept;
  /// Index of the first coefficient with modulus above tol, or order()+1.
  [[nodiscard]] std::size_t valuation(double tol = 0.0) const noexcept;
  [[nodiscard]] TruncatedSeries truncated(std::size_t order) const;
  [[nodiscard]] double max_abs_difference(const TruncatedSeries& other) const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(cplx scalar) noexcept;

  friend TruncatedSeries operator+(TruncatedSeries lhs, const TruncatedSeries& rhs) { return lhs += rhs; }
  friend TruncatedSeries operator-(TruncatedSeries lhs, const TruncatedSeries& rhs) { return lhs -= rhs; }
  friend TruncatedSeries operator*(TruncatedSeries lhs, cplx s) { return lhs *= s; }
  friend TruncatedSeries operator*(cplx s, TruncatedSeries rhs) { return rhs *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::vector<cplx> coeffs_;
  int root_index_;
};

[[nodiscard]] TruncatedSeries series_multiply(const TruncatedSeries& a, const TruncatedSeries& b);
/// a / b; requires b(0) != 0.
[[nodiscard]] TruncatedSeries series_divide(const TruncatedSeries& a, const TruncatedSeries& b);
[[nodiscard]] TruncatedSeries series_derivative(const TruncatedSeries& a);

/// a(b(z)) truncated to the common order. Throws NonzeroConstantTerm if b(0) != 0.
[[nodiscard]] TruncatedSeries series_compose(const TruncatedSeries& a, const TruncatedSeries& b);

/// Compositional inverse of a with a(0) = 0. Throws ZeroDerivative if |a'(0)| <= 1e-12.
[[nodiscard]] TruncatedSeries series_invert(const TruncatedSeries& a);

[[nodiscard]] TruncatedSeries series_exp(const TruncatedSeries& a);
/// Logarithm anchored at the principal Log of a(0). Throws ZeroConstantTerm.
[[nodiscard]] TruncatedSeries series_log(const TruncatedSeries& a);
/// exp(s * log a) with the same branch convention as series_log.
[[nodiscard]] TruncatedSeries series_pow(const TruncatedSeries& a, double s);

/// Inverse of a function with a zero of order exactly k at the origin.
///
/// The k solutions of a(z) = w near 0 are generator(omega^j w^(1/k)) with
/// omega = e^(2 pi i/k) and the principal k-th root.
struct BranchedSeries {
  TruncatedSeries generator;
  int k = 1;

  [[nodiscard]] int branch_count() const noexcept { return k; }
  /// w^(1/k) with argument in [0, 2 pi / k).
  [[nodiscard]] cplx root(cplx w) const noexcept;
  /// Branch j (0 <= j < k) evaluated at w.
  [[nodiscard]] cplx evaluate(int j, cplx w) const;
};

/// Throws WrongVanishingOrder if the leading nonzero index of a is not k.
[[nodiscard]] BranchedSeries kth_root_inverse(const TruncatedSeries& a, int k);

}  // namespace freemult
