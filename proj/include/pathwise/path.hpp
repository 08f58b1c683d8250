#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pathwise/instant.hpp"

namespace pathwise {

struct Knot {
  double time;
  double value;
};

/// Delta x(t) = x(t) - x(t-).
struct JumpRecord {
  Instant time;
  double size;
};

struct ValueRange {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

/// Height of the m-th hump of the zigzag, (m + 1)^-1/2.
double hump_height(std::int64_t m);

/// The zigzag z on [0, 1]: 0 at 1 - 4^-m, (m+1)^-1/2 at 1 - 4^-m / 2,
/// affine in between, z(1) = 0.
double zigzag(const Instant& s);

/// g(s) = z_coef * z(s) + drift * (s - 1) + shift on s in [0, 1].
/// Both halves of p and q are of this form.
struct ZigzagBranch {
  double z_coef = 1.0;
  double drift = 0.0;
  double shift = 0.0;

  double operator()(const Instant& s) const;
  /// Exact range over [sa, sb], sb <= 1. The limit at 1 is included when sb == 1.
  ValueRange range(const Instant& sa, const Instant& sb) const;
};

enum class ZigzagKind { z, p, q };

/// Left branch on [0, 1) evaluated at t; right branch (if any) on [1, 2]
/// evaluated at s = 2 - t.
struct AnalyticZigzag {
  ZigzagKind kind;
  ZigzagBranch left;
  std::optional<ZigzagBranch> right;
};

struct PiecewiseLinear {
  std::vector<Knot> knots;
};

/// Right-continuous step path. steps[i] = (time, new value).
struct PiecewiseConstant {
  double initial = 0.0;
  std::vector<Knot> steps;
};

class CadlagPath {
 public:
  using Representation = std::variant<AnalyticZigzag, PiecewiseLinear, PiecewiseConstant>;

  static CadlagPath zigzag(ZigzagKind kind);
  static CadlagPath piecewise_linear(std::vector<Knot> knots);
  static CadlagPath piecewise_constant(double T, double initial, std::vector<Knot> steps);
  static CadlagPath constant(double T, double c);

  double domain_end() const { return T_; }
  const Representation& representation() const { return rep_; }
  bool is_continuous() const;
  std::string describe() const;

  double eval(const Instant& t) const;
  double left_limit(const Instant& t) const;

  std::vector<JumpRecord> jump_set(double epsilon) const;
  /// J_eps(x)(t): sum of the jumps of size >= eps up to t.
  double jump_part(double epsilon, const Instant& t) const;
  /// x - J_eps(x), in the same representation.
  CadlagPath without_jumps(double epsilon) const;

  /// Closure of the values taken on (a, b]; the same as on [a, b].
  ValueRange value_range(const Instant& a, const Instant& b) const;
  double oscillation(const Instant& a, const Instant& b) const { return value_range(a, b).width(); }
  /// sup |x(t) - x(s)| over s, t in [a, b] with |t - s| <= eps. Exact for
  /// piecewise-linear and step paths; for the zigzags humps narrower than
  /// eps/8 are replaced by their chord.
  double oscillation_mod(double epsilon, const Instant& a, const Instant& b) const;
  double sup_norm() const;

  /// Total variation; finite only for piecewise-linear and step paths.
  double total_variation() const;

 private:
  CadlagPath(double T, Representation rep) : T_(T), rep_(std::move(rep)) {}
  void check_time(const Instant& t) const;

  double T_;
  Representation rep_;
};

enum class NamedPath { z, p, q, indicator_half };

NamedPath parse_named_path(const std::string& name);
CadlagPath make_named_path(NamedPath name);
CadlagPath make_named_path(const std::string& name);

/// +-sqrt(T/N) steps at times i*T/N, i = 1..N, signs from a seeded mt19937_64.
CadlagPath make_random_walk(std::int64_t steps, double T, std::uint64_t seed);

/// Builds a path from its JSON description; see README for the schema.
CadlagPath path_from_json(const std::string& text);

}  // namespace pathwise
