#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathwise/qv.hpp"

namespace pathwise {

struct LAlphaResult {
  double alpha;
  double series_value;
  double oracle_value;
  std::int64_t terms_used;
  double tail_bound;
};

/// 2 * sum_{l <= terms} (l/(alpha+l)^2 - l/(alpha+l+1)^2) plus an
/// Euler-Maclaurin estimate of the remainder. tail_bound bounds the error of
/// that estimate.
LAlphaResult l_alpha_series(double alpha, std::int64_t terms);

/// 2 * sum_{l >= 1} (l + alpha)^-2 for alpha in [0, 1], summed directly to
/// 10^4 terms with an Euler-Maclaurin tail.
double l_alpha_oracle(double alpha);

/// 2 * sum_{m=1}^{n} floor(sqrt(n/m) - alpha), exact.
std::int64_t count_formula(std::int64_t n, double alpha);

/// count_formula(n, alpha) / n.
double empirical_l(std::int64_t n, double alpha);

/// (l, L_l) for l = 1..floor(sqrt(n)), L_l = floor(n/(l+alpha)^2) - floor(n/(l+1+alpha)^2).
std::vector<std::pair<std::int64_t, std::int64_t>> bucket_counts(std::int64_t n, double alpha);

/// Interval count of rho^n(alpha) minus count_formula(n, alpha): 1 for
/// alpha = 0 (the final interval up to t = 1) and 2 for alpha > 0 (also the
/// first interval, since z(0) = 0 is then off the grid).
std::int64_t boundary_offset(double alpha);

struct CountResult {
  std::int64_t n;
  double alpha;
  std::int64_t formula_count;
  std::optional<std::int64_t> geometric_count;
  std::int64_t boundary_offset;

  std::string to_json() const;
};

CountResult count_intervals(std::int64_t n, double alpha, bool geometric);

struct ExperimentRow {
  std::string experiment;
  double alpha;
  std::int64_t n;
  double t;
  double value;
  std::string diag;
};

/// "experiment,alpha,n,t,value,diag"
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

struct NamedDiagnostic {
  std::string label;
  LimitDiagnostic diagnostic;
};

struct ExperimentReport {
  std::string name;
  std::vector<ExperimentRow> rows;
  std::vector<NamedDiagnostic> diagnostics;
  std::vector<std::pair<std::string, double>> figures;  // reported scalars
  std::vector<std::pair<std::string, bool>> verdicts;

  bool passed() const;
  const LimitDiagnostic& diagnostic(const std::string& label) const;
  double figure(const std::string& label) const;
  std::string to_json() const;
};

/// Stopped sums of z along rho^n(alpha) at each t.
ExperimentReport zigzag_qv_experiment(double alpha, const std::vector<std::int64_t>& n_grid,
                                      const std::vector<double>& t_grid, const LimitTolerance& tol = {0.02, 0.0});

/// Stopped sums of p along sigma^n at t = 0.9, 1, 2 and the smooth_cut-weighted sum.
ExperimentReport p_alternation_experiment(const std::vector<std::int64_t>& n_grid,
                                          const LimitTolerance& tol = {0.02, 0.0});

/// Stopped sums of q along tau^n at 1 and 1 + delta.
ExperimentReport q_experiment(const std::vector<std::int64_t>& n_grid, double delta,
                              const LimitTolerance& tol = {0.02, 0.0});

/// Weighted sums of q along tau^n with f''_m, and a scan of f''_m(q(t-))
/// over `scan_points` equally spaced t in (0, 2].
ExperimentReport nonrepresentation_experiment(const std::vector<std::int64_t>& m_list,
                                              const std::vector<std::int64_t>& n_grid,
                                              std::int64_t scan_points = 200000,
                                              const LimitTolerance& tol = {0.02, 0.0});

}  // namespace pathwise
