#pragma once

#include <compare>
#include <cstdint>

namespace pathwise {

/// Grid shift alpha in [0, 1).
///
/// When alpha is a ratio p/q with q <= 1000 (0, 1/4, 1/2, 0.1, ...) every
/// comparison below is decided in 128-bit integers. Other values fall back
/// to long double, which is monotone but may misplace exact ties.
class Shift {
 public:
  static Shift from_double(double alpha);
  static Shift rational(std::int64_t num, std::int64_t den);

  double value() const { return value_; }
  bool exact() const { return den_ != 0; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Orders m * (k + alpha)^2 against n, for k >= 0.
  std::strong_ordering compare_scaled_square(std::int64_t n, std::int64_t m, std::int64_t k) const;

  /// m * (k + alpha)^2 <= n, i.e. sqrt(n/m) - alpha >= k.
  bool reached(std::int64_t n, std::int64_t m, std::int64_t k) const {
    return compare_scaled_square(n, m, k) <= 0;
  }

 private:
  double value_ = 0.0;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// floor(sqrt(n/m) - alpha); -1 when sqrt(n/m) < alpha.
std::int64_t floor_sqrt_ratio_minus(std::int64_t n, std::int64_t m, const Shift& alpha);

/// floor(n / (l + alpha)^2) for l >= 1.
std::int64_t floor_ratio_over_square(std::int64_t n, std::int64_t l, const Shift& alpha);

}  // namespace pathwise
