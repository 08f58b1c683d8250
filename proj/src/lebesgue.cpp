#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pathwise/partition.hpp"

namespace pathwise {

namespace {

constexpr double kSnap = 1e-12;

// Grid levels c*j + r. Either exact (c = 1/sqrt(n), r = alpha/sqrt(n)) or
// floating with a relative snap tolerance.
class LevelGrid {
 public:
  static LevelGrid exact(std::int64_t n, const Shift& alpha) {
    LevelGrid g;
    g.n_ = n;
    g.alpha_ = alpha;
    g.c_ = 1.0 / std::sqrt(static_cast<double>(n));
    g.r_ = alpha.value() * g.c_;
    return g;
  }
  static LevelGrid floating(double c, double r) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("Lebesgue partition: c must be positive");
    if (!(r >= 0.0 && r < c)) throw std::domain_error("Lebesgue partition: r must lie in [0, c)");
    LevelGrid g;
    g.c_ = c;
    g.r_ = r;
    return g;
  }

  bool zero_on_level() const { return n_ ? alpha_.value() == 0.0 : r_ == 0.0; }

  // Largest j with level j <= peak of hump m - 1, i.e. height m^-1/2;
  // -1 when no level is reached.
  std::int64_t floor_peak(std::int64_t m) const {
    if (n_) return floor_sqrt_ratio_minus(n_, m, alpha_);
    return snapped(1.0 / std::sqrt(static_cast<double>(m))).first;
  }
  bool peak_on_level(std::int64_t m) const {
    if (n_) {
      const std::int64_t k = floor_sqrt_ratio_minus(n_, m, alpha_);
      return k >= 0 && alpha_.compare_scaled_square(n_, m, k) == 0;
    }
    return snapped(1.0 / std::sqrt(static_cast<double>(m))).second;
  }
  // level_j / m^-1/2
  double ratio(std::int64_t j, std::int64_t m) const {
    if (n_) {
      return (static_cast<double>(j) + alpha_.value()) * std::sqrt(static_cast<double>(m) / static_cast<double>(n_));
    }
    return (r_ + static_cast<double>(j) * c_) * std::sqrt(static_cast<double>(m));
  }

  double level(std::int64_t j) const { return r_ + static_cast<double>(j) * c_; }

  // (floor index, on level) of a value.
  std::pair<std::int64_t, bool> snapped(double v) const {
    const double u = (v - r_) / c_;
    const double k = std::round(u);
    if (std::fabs(u - k) <= kSnap * std::max(1.0, std::fabs(u))) return {static_cast<std::int64_t>(k), true};
    return {static_cast<std::int64_t>(std::floor(u)), false};
  }

 private:
  std::int64_t n_ = 0;
  Shift alpha_ = Shift::rational(0, 1);
  double c_ = 1.0;
  double r_ = 0.0;
};

struct Collect {
  std::vector<Instant> times;
  std::vector<std::optional<std::int64_t>> levels;
  void hit(const Instant& t, std::int64_t j) {
    times.push_back(t);
    levels.emplace_back(j);
  }
};

struct Count {
  std::int64_t hits = 0;
  void hit(const Instant&, std::int64_t) { ++hits; }
};

// Walks z hump by hump. Hump m rises from 0 to m'^-1/2 (m' = m + 1) and
// falls back to 0; every level other than the current one passed on the way
// is a breakpoint. Stops once the humps can no longer reach a new level.
template <class Sink>
void walk_zigzag(const LevelGrid& g, Sink& sink) {
  std::optional<std::int64_t> cur;
  if (g.zero_on_level()) cur = 0;
  const std::int64_t floor0 = cur ? 0 : -1;
  for (std::int64_t m = 0;; ++m) {
    const std::int64_t mp = m + 1;
    const std::int64_t top = g.floor_peak(mp);
    if (top < 0 || (top == 0 && cur == 0)) break;
    const bool on = g.peak_on_level(mp);
    for (std::int64_t j = floor0 + 1; j <= top; ++j) {
      if (cur == j) continue;
      const bool at_peak = on && j == top;
      const double ratio = std::clamp(g.ratio(j, mp), 0.0, 1.0);
      if (m == 0) {
        sink.hit(Instant(at_peak ? 0.5 : ratio / 2.0), j);
      } else {
        sink.hit(Instant::before_one(m, at_peak ? 0.5 : 1.0 - ratio / 2.0), j);
      }
      cur = j;
    }
    for (std::int64_t j = on ? top - 1 : top; j >= 0; --j) {
      if (cur == j) continue;
      const double ratio = std::clamp(g.ratio(j, mp), 0.0, 1.0);
      if (m == 0) {
        sink.hit(Instant(0.75 - ratio / 4.0), j);
      } else {
        sink.hit(Instant::before_one(m, 0.25 + ratio / 4.0), j);
      }
      cur = j;
    }
  }
}

LebesgueRun finish(std::optional<std::int64_t> start_level, Collect&& c, const Instant& T) {
  std::vector<Instant> pts{Instant(0.0)};
  std::vector<std::optional<std::int64_t>> levels{start_level};
  pts.reserve(c.times.size() + 2);
  pts.insert(pts.end(), c.times.begin(), c.times.end());
  levels.insert(levels.end(), c.levels.begin(), c.levels.end());
  if (pts.back() < T) {
    pts.push_back(T);
    levels.emplace_back(std::nullopt);
  }
  return {Partition(std::move(pts)), std::move(levels)};
}

LebesgueRun walk_linear(const std::vector<Knot>& knots, const LevelGrid& g) {
  Collect sink;
  std::optional<std::int64_t> cur;
  {
    const auto [k, on] = g.snapped(knots.front().value);
    if (on) cur = k;
  }
  const std::optional<std::int64_t> start = cur;
  double last = 0.0;
  auto emit = [&](double t, std::int64_t j) {
    if (t <= last) t = std::nextafter(last, INFINITY);
    sink.hit(Instant(t), j);
    last = t;
    cur = j;
  };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const auto [t0, v0] = knots[i];
    const auto [t1, v1] = knots[i + 1];
    if (v1 == v0) continue;
    const auto [f0, on0] = g.snapped(v0);
    const auto [f1, on1] = g.snapped(v1);
    auto at = [&](std::int64_t j, bool is_end) {
      if (is_end) return t1;
      const double w = (g.level(j) - v0) / (v1 - v0);
      return std::clamp(t0 + w * (t1 - t0), t0, t1);
    };
    if (v1 > v0) {
      for (std::int64_t j = f0 + 1; j <= f1; ++j) {
        if (cur == j) continue;
        emit(at(j, on1 && j == f1), j);
      }
    } else {
      const std::int64_t c0 = on0 ? f0 : f0 + 1;
      const std::int64_t c1 = on1 ? f1 : f1 + 1;
      for (std::int64_t j = c0 - 1; j >= c1; --j) {
        if (cur == j) continue;
        emit(at(j, on1 && j == c1), j);
      }
    }
  }
  return finish(start, std::move(sink), Instant(knots.back().time));
}

}  // namespace

LebesgueRun zigzag_lebesgue(std::int64_t n, const Shift& alpha) {
  if (n < 1) throw std::invalid_argument("zigzag_lebesgue: n must be >= 1");
  const LevelGrid g = LevelGrid::exact(n, alpha);
  Collect sink;
  walk_zigzag(g, sink);
  return finish(g.zero_on_level() ? std::optional<std::int64_t>(0) : std::nullopt, std::move(sink), Instant(1.0));
}

std::int64_t zigzag_lebesgue_count(std::int64_t n, const Shift& alpha) {
  if (n < 1) throw std::invalid_argument("zigzag_lebesgue_count: n must be >= 1");
  Count sink;
  walk_zigzag(LevelGrid::exact(n, alpha), sink);
  return sink.hits + 1;  // the walk never lands on t = 1, so the cap adds one interval
}

LebesgueRun lebesgue_enumerate(const CadlagPath& path, double c, double r) {
  const LevelGrid g = LevelGrid::floating(c, r);
  const auto& rep = path.representation();
  if (const auto* l = std::get_if<PiecewiseLinear>(&rep)) return walk_linear(l->knots, g);
  if (const auto* z = std::get_if<AnalyticZigzag>(&rep); z && z->kind == ZigzagKind::z) {
    Collect sink;
    walk_zigzag(g, sink);
    return finish(g.zero_on_level() ? std::optional<std::int64_t>(0) : std::nullopt, std::move(sink), Instant(1.0));
  }
  throw std::invalid_argument("Lebesgue partition: unsupported representation '" + path.describe() +
                              "' (continuous paths only)");
}

Partition lebesgue_partition(const CadlagPath& path, double c, double r) {
  return lebesgue_enumerate(path, c, r).partition;
}

}  // namespace pathwise
