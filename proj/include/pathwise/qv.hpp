#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathwise/partition.hpp"
#include "pathwise/path.hpp"

namespace pathwise {

using ScalarFn = std::function<double(double)>;

/// x at every breakpoint of the partition.
std::vector<double> values_at(const CadlagPath& path, const Partition& partition);

/// Sum of (x(v) - x(u))^2 over the intervals (u, v] with u <= t.
double qv_cdf_sum(const CadlagPath& path, const Partition& partition, const Instant& t);

/// Sum of (x(v ^ t) - x(u ^ t))^2 over all intervals.
double qv_stopped_sum(const CadlagPath& path, const Partition& partition, const Instant& t);

/// Stopped sums at every breakpoint; element i is the sum stopped at t_i.
std::vector<double> qv_stopped_profile(const CadlagPath& path, const Partition& partition);

/// Sum of f2(x(u)) (x(v) - x(u))^2.
double weighted_f2_sum(const CadlagPath& path, const Partition& partition, const ScalarFn& f2);

/// Sum of f1(x(u)) (x(v) - x(u)).
double riemann_f1_sum(const CadlagPath& path, const Partition& partition, const ScalarFn& f1);

struct LimitTolerance {
  double abs = 1e-6;
  double rel = 1e-6;
};

/// Finite-n picture of a limit: the last value when the tail has settled,
/// and separate limits of the even and odd subsequences of n.
struct LimitDiagnostic {
  std::vector<std::pair<std::int64_t, double>> values;
  std::optional<double> estimate;
  std::optional<double> even_limit;
  std::optional<double> odd_limit;
  bool converged = false;
  bool split_detected = false;
  double tol_abs = 0.0;
  double tol_rel = 0.0;

  std::string to_json() const;
};

/// Needs at least four values; they are sorted by n.
LimitDiagnostic estimate_limit(std::vector<std::pair<std::int64_t, double>> values, const LimitTolerance& tol = {});

}  // namespace pathwise
