#include "pathwise/zigzag_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "json.hpp"
#include "pathwise/compensated_sum.hpp"
#include "pathwise/follmer.hpp"
#include "pathwise/level_arith.hpp"
#include "pathwise/parallel.hpp"
#include "pathwise/partition.hpp"

namespace pathwise {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in [0, 1)");
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// sum_{k >= 0} (x + k)^-2 by Euler-Maclaurin, x >= 10^4.
double inverse_square_tail(double x) {
  const double x2 = x * x;
  return 1.0 / x + 1.0 / (2.0 * x2) + 1.0 / (6.0 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x);
}

void require_grid(const std::vector<std::int64_t>& n_grid) {
  if (n_grid.empty()) throw std::invalid_argument("empty n grid");
  for (auto n : n_grid) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
  }
}

std::vector<std::pair<std::int64_t, double>> column(const std::vector<std::int64_t>& n_grid,
                                                    const std::vector<std::vector<double>>& table, std::size_t k) {
  std::vector<std::pair<std::int64_t, double>> out;
  for (std::size_t i = 0; i < n_grid.size(); ++i) out.emplace_back(n_grid[i], table[i][k]);
  return out;
}

// estimate_limit needs four points; shorter grids still get a diagnostic.
LimitDiagnostic diagnose(std::vector<std::pair<std::int64_t, double>> values, const LimitTolerance& tol) {
  if (values.size() >= 4) return estimate_limit(std::move(values), tol);
  LimitDiagnostic d;
  std::sort(values.begin(), values.end());
  d.values = std::move(values);
  d.tol_abs = tol.abs;
  d.tol_rel = tol.rel;
  return d;
}

}  // namespace

LAlphaResult l_alpha_series(double alpha, std::int64_t terms) {
  check_alpha(alpha);
  if (terms < 1) throw std::invalid_argument("l_alpha_series: terms must be >= 1");
  CompensatedSum s;
  for (std::int64_t l = terms; l >= 1; --l) {
    const double ld = static_cast<double>(l);
    const double a = alpha + ld;
    const double b = a + 1.0;
    s += ld / (a * a) - ld / (b * b);
  }
  const double N = static_cast<double>(terms);
  const double x = N + 1.0 + alpha;
  // the partial sum equals sum_{l <= N} (l+alpha)^-2 - N/x^2; add back both pieces
  const double correction = N / (x * x) + inverse_square_tail(x);
  const double series = 2.0 * (s.get() + correction);
  const double tail_bound = 2.0 / (N + alpha) - 2.0 / (N + alpha + 1.0);
  return {alpha, series, l_alpha_oracle(alpha), terms, tail_bound};
}

double l_alpha_oracle(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("l_alpha_oracle: alpha must lie in [0, 1]");
  constexpr std::int64_t kTerms = 10000;
  CompensatedSum s;
  for (std::int64_t l = kTerms; l >= 1; --l) {
    const double a = static_cast<double>(l) + alpha;
    s += 1.0 / (a * a);
  }
  s += inverse_square_tail(static_cast<double>(kTerms + 1) + alpha);
  return 2.0 * s.get();
}

std::int64_t count_formula(std::int64_t n, double alpha) {
  check_alpha(alpha);
  if (n < 1) throw std::invalid_argument("count_formula: n must be >= 1");
  const Shift s = Shift::from_double(alpha);
  std::int64_t total = 0;
  for (std::int64_t m = 1; m <= n; ++m) total += floor_sqrt_ratio_minus(n, m, s);
  return 2 * total;
}

double empirical_l(std::int64_t n, double alpha) {
  return static_cast<double>(count_formula(n, alpha)) / static_cast<double>(n);
}

std::vector<std::pair<std::int64_t, std::int64_t>> bucket_counts(std::int64_t n, double alpha) {
  check_alpha(alpha);
  if (n < 1) throw std::invalid_argument("bucket_counts: n must be >= 1");
  const Shift s = Shift::from_double(alpha);
  const std::int64_t top = isqrt(n);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  out.reserve(static_cast<std::size_t>(top));
  std::int64_t here = floor_ratio_over_square(n, 1, s);
  for (std::int64_t l = 1; l <= top; ++l) {
    const std::int64_t next = floor_ratio_over_square(n, l + 1, s);
    out.emplace_back(l, here - next);
    here = next;
  }
  return out;
}

std::int64_t boundary_offset(double alpha) {
  check_alpha(alpha);
  return alpha == 0.0 ? 1 : 2;
}

CountResult count_intervals(std::int64_t n, double alpha, bool geometric) {
  CountResult r{n, alpha, count_formula(n, alpha), std::nullopt, boundary_offset(alpha)};
  if (geometric) {
    r.geometric_count = zigzag_lebesgue_count(n, Shift::from_double(alpha));
    r.boundary_offset = *r.geometric_count - r.formula_count;
  }
  return r;
}

std::string CountResult::to_json() const {
  nlohmann::json j{{"n", n}, {"alpha", alpha}, {"formula_count", formula_count}, {"boundary_offset", boundary_offset}};
  j["geometric_count"] = geometric_count ? nlohmann::json(*geometric_count) : nlohmann::json(nullptr);
  return j.dump();
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "experiment,alpha,n,t,value,diag\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{:.17g},{},{:.17g},{:.17g},{}\n", r.experiment, r.alpha, r.n, r.t, r.value, r.diag);
  }
  return out;
}

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.second; });
}

const LimitDiagnostic& ExperimentReport::diagnostic(const std::string& label) const {
  for (const auto& d : diagnostics) {
    if (d.label == label) return d.diagnostic;
  }
  throw std::out_of_range("no diagnostic '" + label + "'");
}

double ExperimentReport::figure(const std::string& label) const {
  for (const auto& [k, v] : figures) {
    if (k == label) return v;
  }
  throw std::out_of_range("no figure '" + label + "'");
}

std::string ExperimentReport::to_json() const {
  using nlohmann::json;
  json j{{"experiment", name}};
  json diags = json::object();
  for (const auto& d : diagnostics) diags[d.label] = json::parse(d.diagnostic.to_json());
  json figs = json::object();
  for (const auto& [k, v] : figures) figs[k] = v;
  json ver = json::object();
  for (const auto& [k, v] : verdicts) ver[k] = v;
  j["limits"] = diags;
  j["figures"] = figs;
  j["verdicts"] = ver;
  j["passed"] = passed();
  return j.dump(2);
}

ExperimentReport zigzag_qv_experiment(double alpha, const std::vector<std::int64_t>& n_grid,
                                      const std::vector<double>& t_grid, const LimitTolerance& tol) {
  check_alpha(alpha);
  require_grid(n_grid);
  if (t_grid.empty()) throw std::invalid_argument("zigzag_qv_experiment: empty t grid");
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("zigzag_qv_experiment: t must lie in [0, 1]");
  }
  const CadlagPath z = make_named_path(NamedPath::z);
  const Shift s = Shift::from_double(alpha);
  struct Cell {
    std::vector<double> values;
    std::size_t intervals;
  };
  const auto cells = parallel_map(n_grid.size(), [&](std::size_t i) {
    const Partition rho = zigzag_lebesgue(n_grid[i], s).partition;
    Cell c{{}, rho.interval_count()};
    for (double t : t_grid) c.values.push_back(qv_stopped_sum(z, rho, Instant(t)));
    return c;
  });
  ExperimentReport r;
  r.name = "zigzag_qv";
  std::vector<std::vector<double>> table;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    table.push_back(cells[i].values);
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      r.rows.push_back({"zigzag_qv", alpha, n_grid[i], t_grid[k], cells[i].values[k],
                        fmt::format("intervals={}", cells[i].intervals)});
    }
  }
  const double L = l_alpha_oracle(alpha);
  r.figures.emplace_back("L(alpha)", L);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const auto label = fmt::format("t={}", t_grid[k]);
    r.diagnostics.push_back({label, diagnose(column(n_grid, table, k), tol)});
    const double last = table.back()[k];
    if (t_grid[k] < 1.0) {
      r.verdicts.emplace_back(label + " vanishing", last <= 0.02);
    } else {
      r.verdicts.emplace_back(label + " near L(alpha)", std::fabs(last - L) <= 0.05);
    }
  }
  return r;
}

ExperimentReport p_alternation_experiment(const std::vector<std::int64_t>& n_grid, const LimitTolerance& tol) {
  require_grid(n_grid);
  const CadlagPath p = make_named_path(NamedPath::p);
  const auto cut = SecondDerivativeProfile::make_smooth_cut();
  const std::vector<double> ts{0.9, 1.0, 2.0};
  const auto cells = parallel_map(n_grid.size(), [&](std::size_t i) {
    const Partition sigma = make_sigma(n_grid[i]);
    std::vector<double> v;
    for (double t : ts) v.push_back(qv_stopped_sum(p, sigma, Instant(t)));
    v.push_back(weighted_f2_sum(p, sigma, cut));
    return v;
  });
  ExperimentReport r;
  r.name = "p_alternation";
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const std::string parity = n_grid[i] % 2 ? "odd" : "even";
    for (std::size_t k = 0; k < ts.size(); ++k)
      r.rows.push_back({"p_stopped", 0.0, n_grid[i], ts[k], cells[i][k], parity});
    r.rows.push_back({"p_smooth_cut", 0.0, n_grid[i], 2.0, cells[i][3], parity});
  }
  const double L0 = l_alpha_oracle(0.0);
  const double Lh = l_alpha_oracle(0.5);
  r.figures = {{"L(0)+4", L0 + 4.0}, {"L(1/2)+4", Lh + 4.0}, {"L(0)+L(1/2)+4", L0 + Lh + 4.0}};
  const std::vector<std::string> labels{"t=0.9", "t=1", "t=2", "smooth_cut"};
  for (std::size_t k = 0; k < labels.size(); ++k)
    r.diagnostics.push_back({labels[k], diagnose(column(n_grid, cells, k), tol)});
  auto near = [](const std::optional<double>& v, double target) { return v && std::fabs(*v - target) <= 0.05; };
  const auto& at1 = r.diagnostic("t=1");
  const auto& at2 = r.diagnostic("t=2");
  const auto& sc = r.diagnostic("smooth_cut");
  r.verdicts = {{"t=1 split", at1.split_detected},
                {"t=1 odd near L(0)+4", near(at1.odd_limit, L0 + 4.0)},
                {"t=1 even near L(1/2)+4", near(at1.even_limit, Lh + 4.0)},
                {"t=2 odd near L(0)+L(1/2)+4", near(at2.odd_limit, L0 + Lh + 4.0)},
                {"t=2 even near L(0)+L(1/2)+4", near(at2.even_limit, L0 + Lh + 4.0)},
                {"smooth_cut split", sc.split_detected},
                {"smooth_cut odd near L(0)+4", near(sc.odd_limit, L0 + 4.0)},
                {"smooth_cut even near L(1/2)+4", near(sc.even_limit, Lh + 4.0)}};
  return r;
}

ExperimentReport q_experiment(const std::vector<std::int64_t>& n_grid, double delta, const LimitTolerance& tol) {
  require_grid(n_grid);
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("q_experiment: delta must lie in (0, 1)");
  const CadlagPath q = make_named_path(NamedPath::q);
  const auto cells = parallel_map(n_grid.size(), [&](std::size_t i) {
    const Partition tau = make_tau(n_grid[i]);
    const double at1 = qv_stopped_sum(q, tau, Instant(1.0));
    const double right = qv_stopped_sum(q, tau, Instant(1.0 + delta));
    return std::vector<double>{at1, right, right - at1};
  });
  ExperimentReport r;
  r.name = "q_jump";
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    r.rows.push_back({"q_stopped", 0.0, n_grid[i], 1.0, cells[i][0], "[q]_1"});
    r.rows.push_back({"q_stopped", 0.0, n_grid[i], 1.0 + delta, cells[i][1], "[q]_(1+delta)"});
    r.rows.push_back({"q_jump", 0.0, n_grid[i], 1.0 + delta, cells[i][2], "[q]_(1+delta)-[q]_1"});
  }
  const double L0 = l_alpha_oracle(0.0);
  r.figures = {{"L(0)", L0}, {"delta", delta}};
  r.diagnostics = {{"t=1", diagnose(column(n_grid, cells, 0), tol)},
                   {"t=1+delta", diagnose(column(n_grid, cells, 1), tol)},
                   {"jump", diagnose(column(n_grid, cells, 2), tol)}};
  r.verdicts = {{"jump near L(0)", std::fabs(cells.back()[2] - L0) <= 0.05}};
  return r;
}

ExperimentReport nonrepresentation_experiment(const std::vector<std::int64_t>& m_list,
                                              const std::vector<std::int64_t>& n_grid, std::int64_t scan_points,
                                              const LimitTolerance& tol) {
  require_grid(n_grid);
  if (m_list.empty()) throw std::invalid_argument("nonrepresentation_experiment: empty m list");
  if (scan_points < 1) throw std::invalid_argument("nonrepresentation_experiment: scan_points must be >= 1");
  std::vector<SecondDerivativeProfile> profiles;
  for (auto m : m_list) profiles.push_back(SecondDerivativeProfile::make_fm(m));
  const CadlagPath q = make_named_path(NamedPath::q);
  const auto cells = parallel_map(n_grid.size(), [&](std::size_t i) {
    const Partition tau = make_tau(n_grid[i]);
    std::vector<double> v;
    for (const auto& f : profiles) v.push_back(weighted_f2_sum(q, tau, f));
    return v;
  });
  // q(t-) on the scan grid t = 2k/scan_points, k = 1..scan_points
  std::vector<double> left;
  left.reserve(static_cast<std::size_t>(scan_points));
  for (std::int64_t k = 1; k <= scan_points; ++k)
    left.push_back(q.left_limit(Instant(2.0 * static_cast<double>(k) / static_cast<double>(scan_points))));

  ExperimentReport r;
  r.name = "nonrepresentation";
  const double L0 = l_alpha_oracle(0.0);
  r.figures.emplace_back("L(0)", L0);
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    const auto label = fmt::format("m={}", m_list[j]);
    for (std::size_t i = 0; i < n_grid.size(); ++i)
      r.rows.push_back({"weighted_f_m", 0.0, n_grid[i], 2.0, cells[i][j], label});
    const auto d = diagnose(column(n_grid, cells, j), tol);
    const double limit = d.estimate.value_or(cells.back()[j]);
    r.diagnostics.push_back({label, d});
    r.verdicts.emplace_back(label + " limit >= L(0)-0.05", limit >= L0 - 0.05);

    double worst = 0.0;
    std::int64_t nonzero = 0;
    for (double w : left) {
      const double v = profiles[j](w);
      worst = std::max(worst, v);
      nonzero += v != 0.0;
    }
    r.figures.emplace_back(label + " scan max f''_m(q(t-))", worst);
    r.figures.emplace_back(label + " scan nonzero count", static_cast<double>(nonzero));
    r.verdicts.emplace_back(label + " scan f''_m(q(t-)) == 0", nonzero == 0);
  }
  const auto lim = SecondDerivativeProfile::fm_limit();
  double worst = 0.0;
  for (double w : left) worst = std::max(worst, lim(w));
  r.figures.emplace_back("scan max limit profile(q(t-))", worst);
  r.figures.emplace_back("scan points", static_cast<double>(scan_points));
  return r;
}

}  // namespace pathwise
