#include "pathwise/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

#include "pathwise/parallel.hpp"

namespace pathwise {

namespace {

double zero_floor(const CadlagPath& path, const AssumptionTolerance& tol) {
  const double scale = std::max(1.0, path.sup_norm());
  return tol.abs_factor * std::numeric_limits<double>::epsilon() * scale + tol.rel * scale;
}

bool row_vanishes(const std::vector<double>& row, double floor, double decay) {
  if (row.back() <= floor) return true;
  for (std::size_t i = 1; i < row.size(); ++i) {
    if (row[i] > row[i - 1] + floor) return false;
  }
  return row.back() <= decay * row.front();
}

void validate(const std::vector<double>& params, const std::vector<std::int64_t>& n_grid) {
  if (params.empty() || n_grid.empty()) throw std::invalid_argument("assumption check: empty grid");
}

std::vector<Partition> partitions(const PartitionSequence& seq, const std::vector<std::int64_t>& n_grid) {
  return parallel_map(n_grid.size(), [&](std::size_t i) { return seq(n_grid[i]); });
}

}  // namespace

std::string AssumptionTable::to_csv(bool header) const {
  std::string out = header ? "family,param,n,epsilon,value\n" : "";
  for (std::size_t p = 0; p < params.size(); ++p) {
    for (std::size_t k = 0; k < n_grid.size(); ++k) {
      out += fmt::format("{},{},{},{:.17g},{:.17g}\n", family, param, n_grid[k], params[p], values[p][k]);
    }
  }
  return out;
}

AssumptionTable check_A1(const CadlagPath& path, const PartitionSequence& seq, std::vector<double> eps_grid,
                         const std::vector<std::int64_t>& n_grid, const AssumptionTolerance& tol) {
  validate(eps_grid, n_grid);
  for (double e : eps_grid) {
    if (!(e > 0.0)) throw std::invalid_argument("check_A1: epsilon must be positive");
  }
  std::sort(eps_grid.begin(), eps_grid.end(), std::greater<>());
  const auto parts = partitions(seq, n_grid);
  AssumptionTable t{"A1", seq.family(), seq.param(), eps_grid, n_grid, {}, {}, zero_floor(path, tol), false};
  std::vector<CadlagPath> stripped;
  for (double e : eps_grid) stripped.push_back(path.without_jumps(e));
  const std::size_t cols = n_grid.size();
  const auto flat = parallel_map(eps_grid.size() * cols, [&](std::size_t i) {
    return osc_over_partition(stripped[i / cols], parts[i % cols]);
  });
  for (std::size_t p = 0; p < eps_grid.size(); ++p) {
    t.values.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(p * cols),
                          flat.begin() + static_cast<std::ptrdiff_t>((p + 1) * cols));
    t.row_verdicts.push_back(row_vanishes(t.values.back(), t.tolerance, tol.decay));
  }
  t.verdict = t.row_verdicts.back();
  return t;
}

AssumptionTable check_A2(const CadlagPath& path, const PartitionSequence& seq, const std::vector<double>& s_list,
                         const std::vector<std::int64_t>& n_grid, const AssumptionTolerance& tol) {
  validate(s_list, n_grid);
  const auto parts = partitions(seq, n_grid);
  AssumptionTable t{"A2", seq.family(), seq.param(), s_list, n_grid, {}, {}, zero_floor(path, tol), true};
  for (double s : s_list) {
    const double left = path.left_limit(Instant(s));
    std::vector<double> row;
    for (const auto& p : parts) row.push_back(std::fabs(path.eval(p.bracket(Instant(s)).first) - left));
    t.values.push_back(row);
    t.row_verdicts.push_back(row_vanishes(row, t.tolerance, tol.decay));
    t.verdict = t.verdict && t.row_verdicts.back();
  }
  return t;
}

}  // namespace pathwise
