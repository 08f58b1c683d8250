#include "pathwise/level_arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathwise {

namespace {
__extension__ typedef __int128 i128;
constexpr std::int64_t kMaxDenominator = 1000;
}  // namespace

Shift Shift::from_double(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("shift alpha must lie in [0, 1)");
  for (std::int64_t q = 1; q <= kMaxDenominator; ++q) {
    const double p = std::round(alpha * static_cast<double>(q));
    if (p / static_cast<double>(q) == alpha) return rational(static_cast<std::int64_t>(p), q);
  }
  Shift s;
  s.value_ = alpha;
  s.num_ = 0;
  s.den_ = 0;
  return s;
}

Shift Shift::rational(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0 || num >= den) throw std::domain_error("shift must be p/q in [0, 1)");
  Shift s;
  s.num_ = num;
  s.den_ = den;
  s.value_ = static_cast<double>(num) / static_cast<double>(den);
  return s;
}

std::strong_ordering Shift::compare_scaled_square(std::int64_t n, std::int64_t m, std::int64_t k) const {
  if (exact()) {
    const i128 a = static_cast<i128>(k) * den_ + num_;
    const i128 lhs = static_cast<i128>(m) * a * a;
    const i128 rhs = static_cast<i128>(n) * den_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  const long double a = static_cast<long double>(k) + value_;
  const long double lhs = static_cast<long double>(m) * a * a;
  const long double rhs = static_cast<long double>(n);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t floor_sqrt_ratio_minus(std::int64_t n, std::int64_t m, const Shift& alpha) {
  if (n < 1 || m < 1) throw std::domain_error("floor_sqrt_ratio_minus: n and m must be positive");
  // double guess, then settle exactly; usually two comparisons
  const double guess = std::floor(std::sqrt(static_cast<double>(n) / static_cast<double>(m)) - alpha.value());
  auto k = static_cast<std::int64_t>(std::max(guess, -1.0));
  while (k >= 0 && !alpha.reached(n, m, k)) --k;
  while (alpha.reached(n, m, k + 1)) ++k;
  return k;
}

std::int64_t floor_ratio_over_square(std::int64_t n, std::int64_t l, const Shift& alpha) {
  if (l < 1) throw std::domain_error("floor_ratio_over_square: l must be >= 1");
  if (alpha.exact()) {
    const i128 a = static_cast<i128>(l) * alpha.den() + alpha.num();
    return static_cast<std::int64_t>((static_cast<i128>(n) * alpha.den() * alpha.den()) / (a * a));
  }
  const long double a = static_cast<long double>(l) + alpha.value();
  auto m = static_cast<std::int64_t>(std::floor(static_cast<long double>(n) / (a * a)));
  // Agree with Shift::reached so that bucket counts and floor sums partition the same m's.
  while (m > 0 && !alpha.reached(n, m, l)) --m;
  while (alpha.reached(n, m + 1, l)) ++m;
  return m;
}

}  // namespace pathwise
