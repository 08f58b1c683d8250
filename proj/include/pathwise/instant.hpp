#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace pathwise {

/// A point of the time axis.
///
/// Ordinary times are plain doubles and round-trip exactly. The zigzag paths
/// have infinitely many breakpoints accumulating at t = 1 (the m-th hump
/// starts at 1 - 4^-m), which collapse to 1.0 in double precision once m
/// passes ~26. An Instant therefore stores `anchor + offset`, where the
/// anchor is one of {0, 1, 2} and the offset is a binary float with a 64-bit
/// exponent, so that 1 - 4^-5000 and 1 - 4^-5001 stay distinct, ordered, and
/// reflect exactly under t -> 2 - t.
///
/// Canonical form: anchor 1 covers [0.5, 1.5), anchor 2 covers [1.5, 4),
/// anchor 0 covers everything else. Conversion from a double is exact.
class Instant {
 public:
  constexpr Instant() = default;
  Instant(double t);  // NOLINT(google-explicit-constructor): widening

  /// 1 - mu * 4^-hump with hump >= 1 and mu in [1/4, 1]. This is the
  /// hump-local coordinate of the zigzag: mu = 1 is the start of hump
  /// `hump`, mu = 1/2 its peak, mu = 1/4 the start of hump `hump + 1`.
  static Instant before_one(std::int64_t hump, double mu);

  /// Decomposition of an instant in (3/4, 1): t = 1 - mu * 4^-hump with
  /// hump >= 1 and mu in (1/4, 1]. Exact.
  struct HumpCoordinate {
    std::int64_t hump;
    double mu;
  };
  bool has_hump_coordinate() const;
  HumpCoordinate hump_coordinate() const;

  /// Nearest double. Instants within ~1e-16 of 1 round to 1.0.
  double to_double() const;

  /// True when to_double() is exact.
  bool is_plain() const;

  /// 2 - t, exact for t in [0, 2].
  Instant reflected() const;

  /// Signed offset t - 1 as a double (may underflow to 0 very close to 1).
  double offset_from_one() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Instant& a, const Instant& b);
  friend bool operator==(const Instant& a, const Instant& b) = default;

  /// b - a rounded once to double; accurate near 1 where to_double() is not.
  friend double operator-(const Instant& b, const Instant& a);

 private:
  // value = anchor_ + sign_ * mant_ * 2^exp_, mant_ in [0.5, 1) or 0.
  std::int8_t anchor_ = 0;
  std::int8_t sign_ = 1;
  double mant_ = 0.0;
  std::int64_t exp_ = 0;

  static Instant make(int anchor, int sign, double mant, std::int64_t exp);
  int rank() const;
  double offset() const;
};

inline const Instant& min(const Instant& a, const Instant& b) { return b < a ? b : a; }
inline const Instant& max(const Instant& a, const Instant& b) { return a < b ? b : a; }

}  // namespace pathwise
