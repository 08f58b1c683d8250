#include "pathwise/instant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

namespace pathwise {

namespace {

// ldexp with a 64-bit exponent; anything below the subnormal range is zero.
double ldexp64(double mant, std::int64_t exp) {
  if (mant == 0.0) return 0.0;
  if (exp < -1200) return 0.0;
  if (exp > 1200) return std::copysign(std::numeric_limits<double>::infinity(), mant);
  return std::ldexp(mant, static_cast<int>(exp));
}

}  // namespace

Instant Instant::make(int anchor, int sign, double mant, std::int64_t exp) {
  Instant r;
  r.anchor_ = static_cast<std::int8_t>(anchor);
  if (mant == 0.0) {
    r.sign_ = 1;
    r.mant_ = 0.0;
    r.exp_ = 0;
  } else {
    r.sign_ = static_cast<std::int8_t>(sign);
    r.mant_ = mant;
    r.exp_ = exp;
  }
  return r;
}

Instant::Instant(double t) {
  if (!std::isfinite(t)) throw std::domain_error("Instant: non-finite time");
  int anchor = 0;
  if (t >= 0.5 && t < 1.5) {
    anchor = 1;
  } else if (t >= 1.5 && t < 4.0) {
    anchor = 2;
  }
  const double d = t - anchor;  // exact by Sterbenz on both anchored ranges
  int e = 0;
  const double m = std::frexp(std::fabs(d), &e);
  *this = make(anchor, d < 0 ? -1 : 1, m, e);
}

Instant Instant::before_one(std::int64_t hump, double mu) {
  if (hump < 1) throw std::domain_error("Instant::before_one: hump index must be >= 1");
  if (!(mu >= 0.25 && mu <= 1.0)) throw std::domain_error("Instant::before_one: mu outside [1/4, 1]");
  int e = 0;
  const double m = std::frexp(mu, &e);
  return make(1, -1, m, static_cast<std::int64_t>(e) - 2 * hump);
}

bool Instant::has_hump_coordinate() const {
  if (anchor_ != 1 || sign_ != -1 || mant_ == 0.0) return false;
  return exp_ < -1 || (exp_ == -1 && mant_ == 0.5);
}

Instant::HumpCoordinate Instant::hump_coordinate() const {
  if (!has_hump_coordinate()) throw std::domain_error("Instant: no hump coordinate outside [3/4, 1)");
  if (exp_ % 2 == 0) return {-exp_ / 2, mant_};
  const std::int64_t k = (1 - exp_) / 2;
  if (mant_ == 0.5) return {k, 1.0};
  return {k - 1, mant_ / 2};
}

double Instant::offset() const { return sign_ * ldexp64(mant_, exp_); }

double Instant::to_double() const { return anchor_ + offset(); }

double Instant::offset_from_one() const {
  if (anchor_ == 1) return offset();
  return (anchor_ - 1) + offset();
}

bool Instant::is_plain() const {
  if (mant_ == 0.0) return true;
  const double o = offset();
  int e = 0;
  const double m = std::frexp(std::fabs(o), &e);
  if (m != mant_ || e != exp_) return false;
  const double t = anchor_ + o;
  return t - anchor_ == o;
}

Instant Instant::reflected() const {
  switch (anchor_) {
    case 0:
      if (mant_ != 0.0 && (sign_ < 0 || exp_ > -1))
        throw std::domain_error("Instant::reflected: time outside [0, 2]");
      return make(2, -sign_, mant_, exp_);
    case 1:
      if (sign_ < 0 && mant_ == 0.5 && exp_ == 0) return make(2, -1, 0.5, 0);  // 0.5 -> 1.5
      return make(1, -sign_, mant_, exp_);
    default:
      if (sign_ > 0 && mant_ != 0.0) throw std::domain_error("Instant::reflected: time outside [0, 2]");
      if (mant_ == 0.5 && exp_ == 0) return make(1, -1, 0.5, 0);  // 1.5 -> 0.5
      return make(0, 1, mant_, exp_);
  }
}

int Instant::rank() const {
  if (anchor_ == 1) return 1;
  if (anchor_ == 2) return 2;
  return (sign_ > 0 && mant_ != 0.0 && exp_ >= 3) ? 3 : 0;  // anchor 0 above 4 sorts last
}

std::strong_ordering operator<=>(const Instant& a, const Instant& b) {
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  const int sa = a.mant_ == 0.0 ? 0 : a.sign_;
  const int sb = b.mant_ == 0.0 ? 0 : b.sign_;
  if (auto c = sa <=> sb; c != 0) return c;
  if (sa == 0) return std::strong_ordering::equal;
  auto magnitude = [&]() -> std::strong_ordering {
    if (auto c = a.exp_ <=> b.exp_; c != 0) return c;
    if (a.mant_ < b.mant_) return std::strong_ordering::less;
    if (a.mant_ > b.mant_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  };
  const auto m = magnitude();
  if (sa > 0) return m;
  return 0 <=> m;
}

double operator-(const Instant& b, const Instant& a) {
  if (a.anchor_ != b.anchor_) return (b.anchor_ - a.anchor_) + (b.offset() - a.offset());
  if (a.mant_ == 0.0) return b.offset();
  if (b.mant_ == 0.0) return -a.offset();
  const std::int64_t e = std::max(a.exp_, b.exp_);
  const double vb = b.sign_ * ldexp64(b.mant_, b.exp_ - e);
  const double va = a.sign_ * ldexp64(a.mant_, a.exp_ - e);
  return ldexp64(vb - va, e);
}

std::string Instant::to_string() const {
  if (is_plain()) return fmt::format("{}", to_double());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", mant_ * 2);  // 0x1.hhhp+0
  std::string hex(buf);
  hex = hex.substr(0, hex.find('p'));
  return fmt::format("{}{}{}p{}", static_cast<int>(anchor_), sign_ < 0 ? "-" : "+", hex, exp_ - 1);
}

}  // namespace pathwise
