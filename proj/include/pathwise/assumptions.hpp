#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathwise/partition.hpp"
#include "pathwise/path.hpp"

namespace pathwise {

/// A value counts as zero below abs_factor * machine epsilon * scale +
/// rel * scale, with scale = max(1, sup|x|). A row that is not yet below
/// that floor still passes when it is non-increasing in n and its last
/// value is at most `decay` times its first (slowly vanishing rows such as
/// the zigzags on dyadic grids).
struct AssumptionTolerance {
  double abs_factor = 10.0;
  double rel = 1e-6;
  double decay = 0.6;
};

struct AssumptionTable {
  std::string name;  // "A1" or "A2"
  std::string family;
  std::string param;
  std::vector<double> params;  // epsilon for A1, s for A2
  std::vector<std::int64_t> n_grid;
  std::vector<std::vector<double>> values;  // [param][n]
  std::vector<bool> row_verdicts;
  double tolerance = 0.0;
  bool verdict = false;

  /// Rows "family,param,n,epsilon,value"; the epsilon column holds s for A2.
  std::string to_csv(bool header = true) const;
};

/// O(x - J_eps(x); pi^n). Passes when the row of the smallest epsilon vanishes.
AssumptionTable check_A1(const CadlagPath& path, const PartitionSequence& seq, std::vector<double> eps_grid,
                         const std::vector<std::int64_t>& n_grid, const AssumptionTolerance& tol = {});

/// |x(lower end of the bracket of s in pi^n) - x(s-)|. Passes when every row vanishes.
AssumptionTable check_A2(const CadlagPath& path, const PartitionSequence& seq, const std::vector<double>& s_list,
                         const std::vector<std::int64_t>& n_grid, const AssumptionTolerance& tol = {});

}  // namespace pathwise
