#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathwise/instant.hpp"
#include "pathwise/level_arith.hpp"
#include "pathwise/path.hpp"

namespace pathwise {

/// Breakpoints 0 = t_0 < t_1 < ... < t_k = T of (0, T]; the intervals are
/// (t_i, t_{i+1}].
class Partition {
 public:
  explicit Partition(std::vector<Instant> breakpoints);

  const std::vector<Instant>& breakpoints() const { return points_; }
  std::size_t interval_count() const { return points_.size() - 1; }
  const Instant& domain_end() const { return points_.back(); }

  /// The interval (u, v] containing s.
  std::pair<Instant, Instant> bracket(const Instant& s) const;
  double mesh() const;

  std::string to_json() const;

 private:
  std::vector<Instant> points_;
};

Partition make_uniform(double T, std::int64_t k);
Partition make_dyadic(double T, int n);
Partition make_fixed(const std::vector<double>& breakpoints);

/// O(y; pi): the largest oscillation over the intervals of pi.
double osc_over_partition(const CadlagPath& path, const Partition& partition);

/// Lebesgue partition together with the grid level the path sits on at
/// each breakpoint (nullopt where it is not on the grid: t = 0 off-grid and
/// the final cap at T).
struct LebesgueRun {
  Partition partition;
  std::vector<std::optional<std::int64_t>> levels;
};

/// pi^{c, r} for a continuous path: successive hitting times of levels
/// c*j + r other than the current one, capped at T.
LebesgueRun lebesgue_enumerate(const CadlagPath& path, double c, double r);
Partition lebesgue_partition(const CadlagPath& path, double c, double r);

/// The Lebesgue partition of z for c = 1/sqrt(n), r = alpha/sqrt(n), with
/// every level comparison decided in integer arithmetic.
LebesgueRun zigzag_lebesgue(std::int64_t n, const Shift& alpha);
/// Interval count of the same partition without materializing it.
std::int64_t zigzag_lebesgue_count(std::int64_t n, const Shift& alpha);

Partition make_rho(std::int64_t n, double alpha);
/// Odd n: rho^n(0) then rho^n(1/2) reflected onto [1, 2]; even n the other way round.
Partition make_sigma(std::int64_t n);
/// rho^n(0) then its reflection onto [1, 2].
Partition make_tau(std::int64_t n);

/// left on [0, 1] followed by right reflected through t -> 2 - t.
Partition concat_reflected(const Partition& left, const Partition& right);

class PartitionSequence {
 public:
  using Generator = std::function<Partition(std::int64_t)>;

  PartitionSequence(std::string family, std::string param, Generator gen)
      : family_(std::move(family)), param_(std::move(param)), gen_(std::move(gen)) {}

  static PartitionSequence uniform(double T);
  static PartitionSequence dyadic(double T);
  static PartitionSequence fixed(Partition p);
  static PartitionSequence rho(double alpha);
  static PartitionSequence sigma();
  static PartitionSequence tau();

  /// "uniform", "dyadic", "fixed:0,0.5,1", "rho:alpha", "sigma", "tau";
  /// T is the domain end used by uniform and dyadic.
  static PartitionSequence parse(const std::string& text, double T);

  Partition operator()(std::int64_t n) const { return gen_(n); }
  const std::string& family() const { return family_; }
  const std::string& param() const { return param_; }

 private:
  std::string family_;
  std::string param_;
  Generator gen_;
};

}  // namespace pathwise
