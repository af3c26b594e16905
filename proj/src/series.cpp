#include "freemult/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freemult/errors.hpp"

namespace freemult {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* where) {
  if (a.order() != b.order())
    throw Error(ErrorKind::InvalidArgument, std::string(where) + ": truncation orders differ");
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs, std::size_t order, int root_index)
    : coeffs_(std::move(coeffs)), root_index_(root_index) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "series order must be at least 1");
  if (root_index < 1) throw Error(ErrorKind::InvalidArgument, "root index must be positive");
  coeffs_.resize(order + 1, cplx{0.0, 0.0});
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::InvalidArgument, "series coefficient is not finite");
}

TruncatedSeries TruncatedSeries::zero(std::size_t order) { return {{}, order}; }

TruncatedSeries TruncatedSeries::constant(cplx value, std::size_t order) { return {{value}, order}; }

TruncatedSeries TruncatedSeries::identity(std::size_t order) { return {{0.0, 1.0}, order}; }

cplx TruncatedSeries::evaluate(cplx v) const noexcept {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
  return acc;
}

std::size_t TruncatedSeries::valuation(double tol) const noexcept {
  for (std::size_t n = 0; n < coeffs_.size(); ++n)
    if (std::abs(coeffs_[n]) > tol) return n;
  return coeffs_.size();
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  std::vector<cplx> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order + 1, coeffs_.size())));
  return {std::move(c), order, root_index_};
}

double TruncatedSeries::max_abs_difference(const TruncatedSeries& other) const {
  const std::size_t n = std::min(order(), other.order());
  double m = 0.0;
  for (std::size_t i = 0; i <= n; ++i) m = std::max(m, std::abs(coeffs_[i] - other.coeffs_[i]));
  return m;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  require_same_order(*this, rhs, "add");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  require_same_order(*this, rhs, "subtract");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx scalar) noexcept {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_multiply(a, b); }

TruncatedSeries series_multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "multiply");
  const std::size_t n = a.order();
  std::vector<cplx> c(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
  }
  return {std::move(c), n, a.root_index()};
}

TruncatedSeries series_divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "divide");
  if (std::abs(b[0]) == 0.0) throw Error(ErrorKind::ZeroConstantTerm, "divisor has zero constant term");
  const std::size_t n = a.order();
  std::vector<cplx> q(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    cplx s = a[i];
    for (std::size_t j = 1; j <= i; ++j) s -= b[j] * q[i - j];
    q[i] = s / b[0];
  }
  return {std::move(q), n, a.root_index()};
}

TruncatedSeries series_derivative(const TruncatedSeries& a) {
  const std::size_t n = a.order();
  std::vector<cplx> d(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) d[i - 1] = static_cast<double>(i) * a[i];
  return {std::move(d), n, a.root_index()};
}

TruncatedSeries series_compose(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "compose");
  if (b[0] != cplx{}) throw Error(ErrorKind::NonzeroConstantTerm, "inner series must vanish at 0");
  const std::size_t n = a.order();
  auto acc = TruncatedSeries::constant(a[n], n);
  for (std::size_t i = n; i-- > 0;) {
    acc = series_multiply(acc, b);
    std::vector<cplx> c(acc.coeffs().begin(), acc.coeffs().end());
    c[0] += a[i];
    acc = TruncatedSeries(std::move(c), n);
  }
  return TruncatedSeries(std::vector<cplx>(acc.coeffs().begin(), acc.coeffs().end()), n, b.root_index());
}

TruncatedSeries series_invert(const TruncatedSeries& a) {
  if (a[0] != cplx{}) throw Error(ErrorKind::NonzeroConstantTerm, "series to invert must vanish at 0");
  const cplx a1 = a[1];
  if (std::abs(a1) <= 1e-12) throw Error(ErrorKind::ZeroDerivative, "linear coefficient is too small to invert");
  const std::size_t n = a.order();
  std::vector<cplx> b(n + 1, 0.0);
  b[1] = 1.0 / a1;
  // Coefficient n of a(b) is a1*b_n plus terms in b_1..b_{n-1}.
  for (std::size_t m = 2; m <= n; ++m) {
    const auto ab = series_compose(a, TruncatedSeries(b, n));
    b[m] -= ab[m] / a1;
  }
  return {std::move(b), n};
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
  const std::size_t n = a.order();
  std::vector<cplx> e(n + 1, 0.0);
  e[0] = std::exp(a[0]);
  for (std::size_t m = 1; m <= n; ++m) {
    cplx s = 0.0;
    for (std::size_t k = 1; k <= m; ++k) s += static_cast<double>(k) * a[k] * e[m - k];
    e[m] = s / static_cast<double>(m);
  }
  return {std::move(e), n, a.root_index()};
}

TruncatedSeries series_log(const TruncatedSeries& a) {
  if (std::abs(a[0]) == 0.0) throw Error(ErrorKind::ZeroConstantTerm, "logarithm needs a nonzero constant term");
  const std::size_t n = a.order();
  const auto q = series_divide(series_derivative(a), a);
  std::vector<cplx> l(n + 1, 0.0);
  l[0] = std::log(a[0]);
  for (std::size_t m = 1; m <= n; ++m) l[m] = q[m - 1] / static_cast<double>(m);
  return {std::move(l), n, a.root_index()};
}

TruncatedSeries series_pow(const TruncatedSeries& a, double s) {
  if (std::abs(a[0]) == 0.0) throw Error(ErrorKind::ZeroConstantTerm, "power needs a nonzero constant term");
  return series_exp(series_log(a) * cplx{s, 0.0});
}

cplx BranchedSeries::root(cplx w) const noexcept {
  if (w == cplx{}) return 0.0;
  double arg = std::arg(w);
  if (arg < 0.0) arg += 2.0 * std::numbers::pi;
  return std::polar(std::pow(std::abs(w), 1.0 / k), arg / k);
}

cplx BranchedSeries::evaluate(int j, cplx w) const {
  if (j < 0 || j >= k) throw Error(ErrorKind::InvalidArgument, "branch index out of range");
  const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi * j / k);
  return generator.evaluate(omega * root(w));
}

BranchedSeries kth_root_inverse(const TruncatedSeries& a, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "root order must be positive");
  const std::size_t n = a.order();
  const auto uk = static_cast<std::size_t>(k);
  std::size_t lead = n + 1;
  for (std::size_t i = 0; i <= n; ++i)
    if (std::abs(a[i]) > 1e-12) {
      lead = i;
      break;
    }
  if (lead != uk)
    throw Error(ErrorKind::WrongVanishingOrder,
                "leading nonzero index is " + (lead > n ? std::string("none") : std::to_string(lead)) +
                    ", expected " + std::to_string(k));
  if (k == 1) return {series_invert(a), 1};

  // a = c_k z^k (1 + b), so a = A^k with A = c_k^(1/k) z (1 + b)^(1/k).
  const std::size_t m = n - uk;
  const cplx ck = a[uk];
  std::vector<cplx> tail(m + 1, 0.0);
  for (std::size_t i = 0; i <= m; ++i) tail[i] = a[uk + i] / ck;
  const std::size_t tail_order = std::max<std::size_t>(m, 1);
  const auto root_tail = series_pow(TruncatedSeries(tail, tail_order), 1.0 / k);
  const cplx scale = std::pow(ck, 1.0 / k);
  const std::size_t order_a = m + 1;
  std::vector<cplx> big(order_a + 1, 0.0);
  for (std::size_t i = 0; i <= m; ++i) big[i + 1] = scale * root_tail[i];
  auto g = series_invert(TruncatedSeries(std::move(big), order_a));
  return {TruncatedSeries(std::vector<cplx>(g.coeffs().begin(), g.coeffs().end()), order_a, k), k};
}

}  // namespace freemult
