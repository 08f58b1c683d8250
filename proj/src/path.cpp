#include "pathwise/path.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

namespace pathwise {

namespace {

constexpr std::int64_t kTailHumps = 64;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Hump index of s in [0, 1); hump 0 is [0, 3/4).
std::int64_t hump_of(const Instant& s) {
  if (s.has_hump_coordinate()) return s.hump_coordinate().hump;
  return 0;
}

void extend(ValueRange& r, double v) {
  r.lo = std::min(r.lo, v);
  r.hi = std::max(r.hi, v);
}

ValueRange unite(const ValueRange& a, const ValueRange& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// sup |v_j - v_i| over pairs whose times differ by at most eps; pts sorted by time.
double windowed_spread(const std::vector<Knot>& pts, double eps) {
  std::deque<std::size_t> mx;
  std::deque<std::size_t> mn;
  double best = 0.0;
  std::size_t lo = 0;
  const double reach = eps * (1.0 + 1e-12);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    while (!mx.empty() && pts[mx.back()].value <= pts[j].value) mx.pop_back();
    mx.push_back(j);
    while (!mn.empty() && pts[mn.back()].value >= pts[j].value) mn.pop_back();
    mn.push_back(j);
    while (pts[j].time - pts[lo].time > reach) ++lo;
    while (mx.front() < lo) mx.pop_front();
    while (mn.front() < lo) mn.pop_front();
    best = std::max(best, pts[mx.front()].value - pts[mn.front()].value);
  }
  return best;
}

}  // namespace

double hump_height(std::int64_t m) { return 1.0 / std::sqrt(static_cast<double>(m) + 1.0); }

double zigzag(const Instant& s) {
  if (s < Instant(0.0) || s > Instant(1.0)) throw std::domain_error("zigzag: argument outside [0, 1]");
  if (s == Instant(1.0)) return 0.0;
  if (s.has_hump_coordinate()) {
    const auto [m, mu] = s.hump_coordinate();
    const double h = hump_height(m);
    return mu >= 0.5 ? 2.0 * h * (1.0 - mu) : 4.0 * h * (mu - 0.25);
  }
  const double t = s.to_double();
  return t <= 0.5 ? 2.0 * t : 4.0 * (0.75 - t);
}

double ZigzagBranch::operator()(const Instant& s) const {
  return z_coef * zigzag(s) + drift * s.offset_from_one() + shift;
}

ValueRange ZigzagBranch::range(const Instant& sa, const Instant& sb) const {
  ValueRange r{(*this)(sa), (*this)(sa)};
  extend(r, (*this)(sb));
  const bool to_one = sb == Instant(1.0);
  const std::int64_t ma = hump_of(sa);
  const std::int64_t mb = to_one ? std::numeric_limits<std::int64_t>::max() : hump_of(sb);
  auto visit = [&](std::int64_t m) {
    auto consider = [&](const Instant& k) {
      if (sa < k && k < sb) extend(r, (*this)(k));
    };
    if (m == 0) {
      consider(Instant(0.5));
    } else {
      consider(Instant::before_one(m, 1.0));
      consider(Instant::before_one(m, 0.5));
    }
  };
  // Knot values are monotone in the hump index for all branches in use, so
  // the first and last few humps of the range carry the extremes.
  const std::int64_t head_end = mb - ma > kTailHumps ? ma + kTailHumps : mb;
  for (std::int64_t m = ma; m <= head_end; ++m) visit(m);
  if (!to_one) {
    for (std::int64_t m = std::max(head_end + 1, mb - kTailHumps); m <= mb; ++m) visit(m);
  }
  return r;
}

CadlagPath CadlagPath::zigzag(ZigzagKind kind) {
  switch (kind) {
    case ZigzagKind::z:
      return CadlagPath(1.0, AnalyticZigzag{kind, {1.0, 0.0, 0.0}, std::nullopt});
    case ZigzagKind::p:
      return CadlagPath(2.0, AnalyticZigzag{kind, {1.0, 0.0, 0.0}, ZigzagBranch{1.0, 0.0, 2.0}});
    case ZigzagKind::q:
      return CadlagPath(2.0, AnalyticZigzag{kind, {-1.0, 1.0, 0.0}, ZigzagBranch{1.0, -1.0, 1.0}});
  }
  throw std::invalid_argument("unknown zigzag kind");
}

CadlagPath CadlagPath::piecewise_linear(std::vector<Knot> knots) {
  if (knots.size() < 2) throw std::invalid_argument("piecewise_linear: need at least two knots");
  if (knots.front().time != 0.0) throw std::invalid_argument("piecewise_linear: first knot must be at t = 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].time) || !std::isfinite(knots[i].value))
      throw std::invalid_argument("piecewise_linear: non-finite knot");
    if (i > 0 && !(knots[i].time > knots[i - 1].time))
      throw std::invalid_argument("piecewise_linear: knot times must be strictly increasing");
  }
  const double T = knots.back().time;
  return CadlagPath(T, PiecewiseLinear{std::move(knots)});
}

CadlagPath CadlagPath::piecewise_constant(double T, double initial, std::vector<Knot> steps) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("piecewise_constant: T must be positive");
  if (!std::isfinite(initial)) throw std::invalid_argument("piecewise_constant: non-finite initial value");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!std::isfinite(steps[i].value)) throw std::invalid_argument("piecewise_constant: non-finite value");
    if (!(steps[i].time > 0.0 && steps[i].time <= T))
      throw std::invalid_argument("piecewise_constant: jump times must lie in (0, T]");
    if (i > 0 && !(steps[i].time > steps[i - 1].time))
      throw std::invalid_argument("piecewise_constant: jump times must be strictly increasing");
  }
  return CadlagPath(T, PiecewiseConstant{initial, std::move(steps)});
}

CadlagPath CadlagPath::constant(double T, double c) { return piecewise_linear({{0.0, c}, {T, c}}); }

bool CadlagPath::is_continuous() const {
  return std::visit(overloaded{[](const AnalyticZigzag& a) { return !a.right.has_value(); },
                               [](const PiecewiseLinear&) { return true; },
                               [](const PiecewiseConstant& c) {
                                 double prev = c.initial;
                                 for (const auto& s : c.steps) {
                                   if (s.value != prev) return false;
                                   prev = s.value;
                                 }
                                 return true;
                               }},
                    rep_);
}

std::string CadlagPath::describe() const {
  return std::visit(overloaded{[](const AnalyticZigzag& a) -> std::string {
                                 switch (a.kind) {
                                   case ZigzagKind::z: return "z";
                                   case ZigzagKind::p: return "p";
                                   case ZigzagKind::q: return "q";
                                 }
                                 return "zigzag";
                               },
                               [](const PiecewiseLinear&) -> std::string { return "piecewise_linear"; },
                               [](const PiecewiseConstant&) -> std::string { return "piecewise_constant"; }},
                    rep_);
}

void CadlagPath::check_time(const Instant& t) const {
  if (t < Instant(0.0) || t > Instant(T_)) throw std::domain_error("time " + t.to_string() + " outside [0, T]");
}

double CadlagPath::eval(const Instant& t) const {
  check_time(t);
  return std::visit(overloaded{[&](const AnalyticZigzag& a) {
                                 if (!a.right || t < Instant(1.0)) return a.left(t);
                                 return (*a.right)(t.reflected());
                               },
                               [&](const PiecewiseLinear& l) {
                                 const double x = t.to_double();
                                 const auto& k = l.knots;
                                 auto it = std::upper_bound(k.begin(), k.end(), x,
                                                            [](double v, const Knot& kn) { return v < kn.time; });
                                 if (it == k.end()) return k.back().value;
                                 const Knot& hi = *it;
                                 const Knot& lo = *(it - 1);
                                 const double w = (x - lo.time) / (hi.time - lo.time);
                                 return lo.value + w * (hi.value - lo.value);
                               },
                               [&](const PiecewiseConstant& c) {
                                 const double x = t.to_double();
                                 auto it = std::upper_bound(c.steps.begin(), c.steps.end(), x,
                                                            [](double v, const Knot& kn) { return v < kn.time; });
                                 return it == c.steps.begin() ? c.initial : (it - 1)->value;
                               }},
                    rep_);
}

double CadlagPath::left_limit(const Instant& t) const {
  check_time(t);
  if (t == Instant(0.0)) throw std::domain_error("left limit undefined at t = 0");
  return std::visit(overloaded{[&](const AnalyticZigzag& a) {
                                 if (a.right && t == Instant(1.0)) return a.left(Instant(1.0));
                                 return eval(t);
                               },
                               [&](const PiecewiseLinear&) { return eval(t); },
                               [&](const PiecewiseConstant& c) {
                                 const double x = t.to_double();
                                 auto it = std::lower_bound(c.steps.begin(), c.steps.end(), x,
                                                            [](const Knot& kn, double v) { return kn.time < v; });
                                 return it == c.steps.begin() ? c.initial : (it - 1)->value;
                               }},
                    rep_);
}

std::vector<JumpRecord> CadlagPath::jump_set(double epsilon) const {
  if (!(epsilon > 0.0)) throw std::domain_error("jump_set: epsilon must be positive");
  std::vector<JumpRecord> out;
  std::visit(overloaded{[&](const AnalyticZigzag& a) {
                          if (!a.right) return;
                          const double size = (*a.right)(Instant(1.0)) - a.left(Instant(1.0));
                          if (size != 0.0 && std::fabs(size) >= epsilon) out.push_back({Instant(1.0), size});
                        },
                        [&](const PiecewiseLinear&) {},
                        [&](const PiecewiseConstant& c) {
                          double prev = c.initial;
                          for (const auto& s : c.steps) {
                            const double size = s.value - prev;
                            if (size != 0.0 && std::fabs(size) >= epsilon) out.push_back({Instant(s.time), size});
                            prev = s.value;
                          }
                        }},
             rep_);
  return out;
}

double CadlagPath::jump_part(double epsilon, const Instant& t) const {
  check_time(t);
  double sum = 0.0;
  for (const auto& j : jump_set(epsilon)) {
    if (j.time <= t) sum += j.size;
  }
  return sum;
}

CadlagPath CadlagPath::without_jumps(double epsilon) const {
  if (!(epsilon > 0.0)) throw std::domain_error("without_jumps: epsilon must be positive");
  return std::visit(overloaded{[&](const AnalyticZigzag& a) {
                                 AnalyticZigzag b = a;
                                 for (const auto& j : jump_set(epsilon)) b.right->shift -= j.size;
                                 return CadlagPath(T_, b);
                               },
                               [&](const PiecewiseLinear&) { return *this; },
                               [&](const PiecewiseConstant& c) {
                                 PiecewiseConstant out{c.initial, {}};
                                 double prev = c.initial;
                                 double removed = 0.0;
                                 for (const auto& s : c.steps) {
                                   const double size = s.value - prev;
                                   prev = s.value;
                                   if (size != 0.0 && std::fabs(size) >= epsilon) {
                                     removed += size;
                                     continue;
                                   }
                                   out.steps.push_back({s.time, s.value - removed});
                                 }
                                 return CadlagPath(T_, std::move(out));
                               }},
                    rep_);
}

ValueRange CadlagPath::value_range(const Instant& a, const Instant& b) const {
  check_time(a);
  check_time(b);
  if (b < a) throw std::domain_error("value_range: empty interval");
  return std::visit(
      overloaded{[&](const AnalyticZigzag& z) {
                   const Instant one(1.0);
                   if (!z.right) return z.left.range(a, b);
                   std::optional<ValueRange> r;
                   if (a < one) r = z.left.range(a, min(b, one));
                   if (b >= one) {
                     const ValueRange rr = z.right->range(b.reflected(), max(a, one).reflected());
                     r = r ? unite(*r, rr) : rr;
                   }
                   return *r;
                 },
                 [&](const PiecewiseLinear& l) {
                   const double xa = a.to_double();
                   const double xb = b.to_double();
                   ValueRange r{eval(a), eval(a)};
                   extend(r, eval(b));
                   auto it = std::upper_bound(l.knots.begin(), l.knots.end(), xa,
                                              [](double v, const Knot& kn) { return v < kn.time; });
                   for (; it != l.knots.end() && it->time < xb; ++it) extend(r, it->value);
                   return r;
                 },
                 [&](const PiecewiseConstant& c) {
                   const double xa = a.to_double();
                   const double xb = b.to_double();
                   ValueRange r{eval(a), eval(a)};
                   auto it = std::upper_bound(c.steps.begin(), c.steps.end(), xa,
                                              [](double v, const Knot& kn) { return v < kn.time; });
                   for (; it != c.steps.end() && it->time <= xb; ++it) extend(r, it->value);
                   return r;
                 }},
      rep_);
}

double CadlagPath::oscillation_mod(double epsilon, const Instant& a, const Instant& b) const {
  if (!(epsilon > 0.0)) throw std::domain_error("oscillation_mod: epsilon must be positive");
  check_time(a);
  check_time(b);
  if (b < a) throw std::domain_error("oscillation_mod: empty interval");
  const double xa = a.to_double();
  const double xb = b.to_double();

  if (const auto* c = std::get_if<PiecewiseConstant>(&rep_)) {
    // Piece i is [tau_i, tau_{i+1}); pieces i < j contain points closer than
    // eps iff tau_j - tau_{i+1} < eps.
    std::vector<double> tau{xa};
    std::vector<double> val{eval(a)};
    for (const auto& s : c->steps) {
      if (s.time > xa && s.time <= xb) {
        tau.push_back(s.time);
        val.push_back(s.value);
      }
    }
    std::deque<std::size_t> mx;
    std::deque<std::size_t> mn;
    double best = 0.0;
    for (std::size_t j = 1; j < tau.size(); ++j) {
      const std::size_t i = j - 1;
      while (!mx.empty() && val[mx.back()] <= val[i]) mx.pop_back();
      mx.push_back(i);
      while (!mn.empty() && val[mn.back()] >= val[i]) mn.pop_back();
      mn.push_back(i);
      while (!mx.empty() && !(tau[j] - tau[mx.front() + 1] < epsilon)) mx.pop_front();
      while (!mn.empty() && !(tau[j] - tau[mn.front() + 1] < epsilon)) mn.pop_front();
      if (!mx.empty()) best = std::max(best, val[mx.front()] - val[j]);
      if (!mn.empty()) best = std::max(best, val[j] - val[mn.front()]);
    }
    return best;
  }

  std::vector<double> knots{xa, xb};
  bool jump_at_one = false;
  if (const auto* l = std::get_if<PiecewiseLinear>(&rep_)) {
    for (const auto& k : l->knots) {
      if (k.time > xa && k.time < xb) knots.push_back(k.time);
    }
  } else {
    const auto& z = std::get<AnalyticZigzag>(rep_);
    const auto depth = static_cast<std::int64_t>(
        std::min(30.0, std::max(1.0, std::ceil(std::log(8.0 / epsilon) / std::log(4.0)))));
    std::vector<double> left{0.5, 1.0};
    for (std::int64_t m = 1; m <= depth; ++m) {
      left.push_back(1.0 - std::ldexp(1.0, static_cast<int>(-2 * m)));
      left.push_back(1.0 - std::ldexp(1.0, static_cast<int>(-2 * m - 1)));
    }
    for (double k : left) {
      if (k > xa && k < xb) knots.push_back(k);
      if (z.right && 2.0 - k > xa && 2.0 - k < xb) knots.push_back(2.0 - k);
    }
    jump_at_one = z.right.has_value() && xa < 1.0 && xb >= 1.0;
  }
  std::vector<Knot> pts;
  for (double k : knots) {
    for (double t : {k, k - epsilon, k + epsilon}) {
      if (t >= xa && t <= xb) pts.push_back({t, eval(Instant(t))});
    }
  }
  if (jump_at_one) pts.push_back({1.0, left_limit(Instant(1.0))});
  std::stable_sort(pts.begin(), pts.end(), [](const Knot& p, const Knot& q) { return p.time < q.time; });
  return windowed_spread(pts, epsilon);
}

double CadlagPath::sup_norm() const {
  const ValueRange r = value_range(Instant(0.0), Instant(T_));
  return std::max(std::fabs(r.lo), std::fabs(r.hi));
}

double CadlagPath::total_variation() const {
  return std::visit(overloaded{[](const AnalyticZigzag&) { return std::numeric_limits<double>::infinity(); },
                               [](const PiecewiseLinear& l) {
                                 double tv = 0.0;
                                 for (std::size_t i = 1; i < l.knots.size(); ++i)
                                   tv += std::fabs(l.knots[i].value - l.knots[i - 1].value);
                                 return tv;
                               },
                               [](const PiecewiseConstant& c) {
                                 double tv = 0.0;
                                 double prev = c.initial;
                                 for (const auto& s : c.steps) {
                                   tv += std::fabs(s.value - prev);
                                   prev = s.value;
                                 }
                                 return tv;
                               }},
                    rep_);
}

NamedPath parse_named_path(const std::string& name) {
  if (name == "z" || name == "zigzag_z") return NamedPath::z;
  if (name == "p") return NamedPath::p;
  if (name == "q") return NamedPath::q;
  if (name == "indicator_half") return NamedPath::indicator_half;
  throw std::invalid_argument("unknown path name '" + name + "'");
}

CadlagPath make_named_path(NamedPath name) {
  switch (name) {
    case NamedPath::z: return CadlagPath::zigzag(ZigzagKind::z);
    case NamedPath::p: return CadlagPath::zigzag(ZigzagKind::p);
    case NamedPath::q: return CadlagPath::zigzag(ZigzagKind::q);
    case NamedPath::indicator_half: return CadlagPath::piecewise_constant(1.0, 0.0, {{0.5, 1.0}});
  }
  throw std::invalid_argument("unknown path name");
}

CadlagPath make_named_path(const std::string& name) { return make_named_path(parse_named_path(name)); }

CadlagPath make_random_walk(std::int64_t steps, double T, std::uint64_t seed) {
  if (steps < 1) throw std::invalid_argument("random walk: steps must be >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("random walk: T must be positive");
  std::mt19937_64 rng(seed);
  const double h = std::sqrt(T / static_cast<double>(steps));
  std::vector<Knot> jumps;
  jumps.reserve(static_cast<std::size_t>(steps));
  std::int64_t s = 0;
  for (std::int64_t i = 1; i <= steps; ++i) {
    s += (rng() >> 63) != 0 ? 1 : -1;
    jumps.push_back({static_cast<double>(i) * T / static_cast<double>(steps), static_cast<double>(s) * h});
  }
  return CadlagPath::piecewise_constant(T, 0.0, std::move(jumps));
}

}  // namespace pathwise
