#include "pathwise/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathwise/assumptions.hpp"
#include "pathwise/follmer.hpp"
#include "pathwise/partition.hpp"
#include "pathwise/path.hpp"
#include "pathwise/qv.hpp"
#include "pathwise/zigzag_lab.hpp"

namespace pathwise {

namespace {

using nlohmann::json;

struct AssertFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double alpha = 0.0;
  std::vector<std::int64_t> n;
  std::int64_t nmax = 100000;
  std::vector<double> t;
  std::vector<double> eps;
  std::int64_t terms = 100000;
  std::string path;
  std::string partition;
  std::string f = "square";
  std::string out;
  std::uint64_t seed = 1;
  bool assert_mode = false;
  std::vector<std::int64_t> m{1, 2, 4};
  double delta = 0.5;
};

void check_out_dir(const RunConfig& cfg) {
  if (cfg.out.empty()) return;
  const std::filesystem::path p(cfg.out);
  if (p.has_parent_path() && !std::filesystem::is_directory(p.parent_path()))
    throw std::invalid_argument("output directory does not exist: " + p.parent_path().string());
}

void write_csv(const RunConfig& cfg, const std::string& csv) {
  if (cfg.out.empty()) return;
  check_out_dir(cfg);
  const std::filesystem::path p(cfg.out);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + cfg.out);
  f << csv;
}

CadlagPath load_path(const std::string& spec, std::uint64_t seed) {
  if (spec.empty()) throw std::invalid_argument("--path is required");
  if (spec.front() == '{') return path_from_json(spec);
  if (spec.front() == '@') {
    std::ifstream f(spec.substr(1));
    if (!f) throw std::invalid_argument("cannot read path spec " + spec.substr(1));
    std::stringstream ss;
    ss << f.rdbuf();
    return path_from_json(ss.str());
  }
  if (spec == "random_walk") return make_random_walk(16384, 1.0, seed);
  return make_named_path(spec);
}

// One partition: fixed:..., uniform:k, dyadic:n, rho:alpha, sigma, tau
// (the last three take their index from --n).
Partition load_partition(const RunConfig& cfg, double T) {
  const auto colon = cfg.partition.find(':');
  const std::string head = cfg.partition.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : cfg.partition.substr(colon + 1);
  auto index = [&]() -> std::int64_t {
    if (cfg.n.size() != 1) throw std::invalid_argument("partition '" + head + "' needs a single --n");
    return cfg.n.front();
  };
  if (head == "uniform") return make_uniform(T, std::stoll(tail));
  if (head == "dyadic") return make_dyadic(T, std::stoi(tail));
  if (head == "rho" || head == "sigma" || head == "tau" || head == "fixed")
    return PartitionSequence::parse(cfg.partition, T)(head == "fixed" ? 0 : index());
  throw std::invalid_argument("unknown partition '" + cfg.partition + "'");
}

// n, n+1 pairs at fractions of nmax, for parity-sensitive limits.
std::vector<std::int64_t> paired_grid(std::int64_t nmax) {
  std::vector<std::int64_t> out;
  for (double frac : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    const auto base = std::max<std::int64_t>(1, static_cast<std::int64_t>(frac * static_cast<double>(nmax)));
    for (std::int64_t k : {base + 1, base + 2}) {
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
  }
  return out;
}

std::vector<std::int64_t> fraction_grid(std::int64_t nmax) {
  std::vector<std::int64_t> out;
  for (double frac : {0.125, 0.25, 0.5, 0.75, 1.0}) {
    const auto k = std::max<std::int64_t>(1, static_cast<std::int64_t>(frac * static_cast<double>(nmax)));
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

void check_assert(const RunConfig& cfg, bool ok, const std::string& what) {
  if (cfg.assert_mode && !ok) throw AssertFailure(what);
}

int cmd_l_alpha(const RunConfig& cfg, std::ostream& out) {
  const auto r = l_alpha_series(cfg.alpha, cfg.terms);
  json j{{"alpha", r.alpha},
         {"series_value", r.series_value},
         {"oracle_value", r.oracle_value},
         {"terms_used", r.terms_used},
         {"tail_bound", r.tail_bound}};
  std::optional<double> closed;
  if (cfg.alpha == 0.0) closed = std::numbers::pi * std::numbers::pi / 3.0;
  if (cfg.alpha == 0.5) closed = std::numbers::pi * std::numbers::pi - 8.0;
  if (closed) j["closed_form"] = *closed;
  out << j.dump(2) << "\n";
  write_csv(cfg, fmt::format("alpha,terms,series_value,oracle_value,tail_bound\n{:.17g},{},{:.17g},{:.17g},{:.17g}\n",
                             r.alpha, r.terms_used, r.series_value, r.oracle_value, r.tail_bound));
  check_assert(cfg, std::fabs(r.series_value - r.oracle_value) <= r.tail_bound + 1e-12, "series and oracle disagree");
  if (closed) check_assert(cfg, std::fabs(r.series_value - *closed) <= 1e-8, "series misses the closed form");
  return kExitOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const std::vector<std::int64_t> ns = cfg.n.empty() ? std::vector<std::int64_t>{1, 4, 100, 10000} : cfg.n;
  json arr = json::array();
  std::string csv = "n,alpha,formula_count,geometric_count,boundary_offset,empirical_l,bucket_identity\n";
  bool ok = true;
  for (auto n : ns) {
    const auto r = count_intervals(n, cfg.alpha, n <= 1000000);
    std::int64_t twice = 0;
    for (const auto& [l, L] : bucket_counts(n, cfg.alpha)) twice += 2 * l * L;
    const bool identity = twice == r.formula_count;
    ok = ok && identity && r.boundary_offset == boundary_offset(cfg.alpha);
    auto j = json::parse(r.to_json());
    j["empirical_l"] = static_cast<double>(r.formula_count) / static_cast<double>(n);
    j["bucket_identity"] = identity;
    arr.push_back(j);
    csv += fmt::format("{},{:.17g},{},{},{},{:.17g},{}\n", n, cfg.alpha, r.formula_count,
                       r.geometric_count ? std::to_string(*r.geometric_count) : "", r.boundary_offset,
                       static_cast<double>(r.formula_count) / static_cast<double>(n), identity ? 1 : 0);
  }
  out << arr.dump(2) << "\n";
  write_csv(cfg, csv);
  check_assert(cfg, ok, "count identity or boundary offset violated");
  return kExitOk;
}

int report_out(const RunConfig& cfg, const ExperimentReport& r, std::ostream& out) {
  out << r.to_json() << "\n";
  write_csv(cfg, experiment_csv(r.rows));
  check_assert(cfg, r.passed(), r.name + " verdicts failed");
  return kExitOk;
}

int cmd_zigzag_qv(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::int64_t> ns = cfg.n;
  if (ns.empty()) {
    for (std::int64_t k : {1000, 10000, 25000, 50000, 100000, 1000000}) {
      if (k <= cfg.nmax) ns.push_back(k);
    }
  }
  const std::vector<double> ts = cfg.t.empty() ? std::vector<double>{0.5, 0.9, 1.0} : cfg.t;
  return report_out(cfg, zigzag_qv_experiment(cfg.alpha, ns, ts), out);
}

int cmd_p_alternation(const RunConfig& cfg, std::ostream& out) {
  return report_out(cfg, p_alternation_experiment(cfg.n.empty() ? paired_grid(cfg.nmax) : cfg.n), out);
}

int cmd_q_jump(const RunConfig& cfg, std::ostream& out) {
  return report_out(cfg, q_experiment(cfg.n.empty() ? fraction_grid(cfg.nmax) : cfg.n, cfg.delta), out);
}

int cmd_nonrepresentation(const RunConfig& cfg, std::ostream& out) {
  return report_out(cfg, nonrepresentation_experiment(cfg.m, cfg.n.empty() ? fraction_grid(cfg.nmax) : cfg.n), out);
}

int cmd_formula_check(const RunConfig& cfg, std::ostream& out) {
  const CadlagPath path = load_path(cfg.path, cfg.seed);
  const Partition part = load_partition(cfg, path.domain_end());
  const TestFunction f = TestFunction::parse(cfg.f);
  const double eps = cfg.eps.empty() ? 1e-9 : cfg.eps.front();
  const double lhs = f.f(path.eval(Instant(path.domain_end()))) - f.f(path.eval(Instant(0.0)));
  const double riemann = riemann_f1_sum(path, part, f.f1);
  const double weighted = weighted_f2_sum(path, part, f.f2);
  const double jumps = jump_term(path, f, eps);
  const double residual = follmer_residual(path, part, f, eps);
  json j{{"path", path.describe()},
         {"partition", cfg.partition},
         {"intervals", part.interval_count()},
         {"f", f.name},
         {"epsilon", eps},
         {"increment", lhs},
         {"riemann_f1_sum", riemann},
         {"weighted_f2_sum", weighted},
         {"jump_term", jumps},
         {"residual", residual}};
  out << j.dump(2) << "\n";
  const std::int64_t n = cfg.n.size() == 1 ? cfg.n.front() : static_cast<std::int64_t>(part.interval_count());
  write_csv(cfg, residual_csv({{path.describe(), cfg.partition, n, f.name, eps, residual}}));
  const double scale = std::max({1.0, std::fabs(lhs), std::fabs(riemann), std::fabs(weighted)});
  check_assert(cfg, std::fabs(residual) <= 1e-9 * scale, "residual is not zero");
  return kExitOk;
}

int cmd_corollary_check(const RunConfig& cfg, std::ostream& out) {
  const CadlagPath path = cfg.path.empty() ? make_random_walk(16384, 1.0, cfg.seed) : load_path(cfg.path, cfg.seed);
  const TestFunction f = TestFunction::parse(cfg.f);
  std::vector<std::int64_t> ks = cfg.n;
  if (ks.empty()) {
    int top = 16;
    if (const auto* c = std::get_if<PiecewiseConstant>(&path.representation())) {
      top = static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(1, c->steps.size()))))) + 2;
    }
    ks = {top - 3, top - 2, top - 1, top};
  }
  std::vector<std::pair<std::int64_t, double>> values;
  for (auto k : ks) values.emplace_back(k, weighted_f2_sum(path, make_dyadic(path.domain_end(), static_cast<int>(k)), f.f2));
  const auto diag = estimate_limit(values, {1e-9, 1e-9});
  const Partition finest = make_dyadic(path.domain_end(), static_cast<int>(*std::max_element(ks.begin(), ks.end())));
  const auto qv = empirical_qv(path, finest);
  const double integral = stieltjes_integral([&](const Instant& t) { return f.f2(path.left_limit(t)); }, qv);
  const double limit = diag.estimate.value_or(values.back().second);
  json j{{"path", path.describe()},
         {"f", f.name},
         {"weighted_f2_limit", json::parse(diag.to_json())},
         {"stieltjes_integral", integral},
         {"difference", limit - integral}};
  out << j.dump(2) << "\n";
  std::string csv = "experiment,alpha,n,t,value,diag\n";
  for (const auto& [k, v] : values)
    csv += fmt::format("weighted_f2,0,{},{:.17g},{:.17g},dyadic\n", k, path.domain_end(), v);
  csv += fmt::format("stieltjes,0,{},{:.17g},{:.17g},rc_modification\n", finest.interval_count(), path.domain_end(),
                     integral);
  write_csv(cfg, csv);
  check_assert(cfg, std::fabs(limit - integral) <= 1e-6, "Stieltjes integral does not match the weighted limit");
  return kExitOk;
}

int cmd_assumptions(const RunConfig& cfg, std::ostream& out) {
  const CadlagPath path = load_path(cfg.path, cfg.seed);
  const double T = path.domain_end();
  const std::string family = cfg.partition.empty() ? "dyadic" : cfg.partition;
  const auto seq = PartitionSequence::parse(family, T);
  std::vector<std::int64_t> ns = cfg.n;
  if (ns.empty()) {
    if (seq.family() == "dyadic") {
      ns = {4, 8, 12, 16, 20};
    } else if (seq.family() == "fixed") {
      ns = {1, 2, 3, 4};
    } else if (seq.family() == "uniform") {
      ns = {10, 100, 1000, 10000, 100000};
    } else {
      ns = {100, 1000, 10000};
    }
  }
  const std::vector<double> eps = cfg.eps.empty() ? std::vector<double>{1.0, 0.1, 0.01, 0.001} : cfg.eps;
  const std::vector<double> s = cfg.t.empty() ? std::vector<double>{T / 4, T / 2, 3 * T / 4, T} : cfg.t;
  const auto a1 = check_A1(path, seq, eps, ns);
  const auto a2 = check_A2(path, seq, s, ns);
  auto table_json = [](const AssumptionTable& t) {
    json rows = json::array();
    for (std::size_t i = 0; i < t.params.size(); ++i)
      rows.push_back({{"param", t.params[i]}, {"values", t.values[i]}, {"verdict", static_cast<bool>(t.row_verdicts[i])}});
    return json{{"n", t.n_grid}, {"rows", rows}, {"tolerance", t.tolerance}, {"verdict", t.verdict}};
  };
  json j{{"path", path.describe()}, {"family", seq.family()}, {"A1", table_json(a1)}, {"A2", table_json(a2)}};
  out << j.dump(2) << "\n";
  write_csv(cfg, a1.to_csv(true) + a2.to_csv(false));
  check_assert(cfg, a1.verdict && a2.verdict, "assumption check failed");
  return kExitOk;
}

int cmd_leb_partition(const RunConfig& cfg, std::ostream& out) {
  const CadlagPath path = load_path(cfg.path.empty() ? "z" : cfg.path, cfg.seed);
  if (cfg.n.size() != 1) throw std::invalid_argument("leb-partition needs a single --n");
  const std::int64_t n = cfg.n.front();
  if (n < 1) throw std::invalid_argument("--n must be >= 1");
  const auto* zz = std::get_if<AnalyticZigzag>(&path.representation());
  const LebesgueRun run = (zz && zz->kind == ZigzagKind::z)
                              ? zigzag_lebesgue(n, Shift::from_double(cfg.alpha))
                              : lebesgue_enumerate(path, 1.0 / std::sqrt(static_cast<double>(n)),
                                                   cfg.alpha / std::sqrt(static_cast<double>(n)));
  const auto& b = run.partition.breakpoints();
  json j{{"path", path.describe()},
         {"n", n},
         {"alpha", cfg.alpha},
         {"intervals", run.partition.interval_count()},
         {"breakpoints", json::parse(run.partition.to_json())}};
  out << j.dump() << "\n";
  std::string csv = "k,time,level\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    csv += fmt::format("{},{},{}\n", i, b[i].to_string(), run.levels[i] ? std::to_string(*run.levels[i]) : "");
  }
  write_csv(cfg, csv);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pathwise quadratic variation and Ito-Follmer experiments"};
  app.require_subcommand(1);
  RunConfig cfg;

  struct Command {
    std::string name;
    std::string help;
    std::function<int(const RunConfig&, std::ostream&)> run;
  };
  const std::vector<Command> commands{
      {"l-alpha", "series for L(alpha) with tail bound and oracle", cmd_l_alpha},
      {"count", "floor-sum interval counts against the Lebesgue enumeration", cmd_count},
      {"zigzag-qv", "stopped quadratic variation of z along rho^n(alpha)", cmd_zigzag_qv},
      {"p-alternation", "parity split of the quadratic variation of p along sigma^n", cmd_p_alternation},
      {"q-jump", "right discontinuity of the quadratic variation of q along tau^n", cmd_q_jump},
      {"nonrepresentation", "weighted sums of q with the f_m family", cmd_nonrepresentation},
      {"formula-check", "Ito-Follmer residual for one path, partition and f", cmd_formula_check},
      {"corollary-check", "weighted-sum limit against the Stieltjes integral", cmd_corollary_check},
      {"assumptions", "empirical A1/A2 tables", cmd_assumptions},
      {"leb-partition", "Lebesgue partition of a continuous path", cmd_leb_partition},
  };

  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--alpha", cfg.alpha, "grid shift alpha in [0, 1)");
    sub->add_option("--n", cfg.n, "index or comma-separated list of indices")->delimiter(',');
    sub->add_option("--nmax", cfg.nmax, "largest index of the default grid");
    sub->add_option("--t", cfg.t, "times (comma-separated)")->delimiter(',');
    sub->add_option("--eps", cfg.eps, "epsilon values (comma-separated)")->delimiter(',');
    sub->add_option("--terms", cfg.terms, "series terms");
    sub->add_option("--path", cfg.path, "z | p | q | indicator_half | random_walk | JSON | @file");
    sub->add_option("--partition", cfg.partition, "fixed:.. | uniform:k | dyadic:n | rho:alpha | sigma | tau");
    sub->add_option("--f", cfg.f, "square | cube | exp | affine");
    sub->add_option("--out", cfg.out, "CSV output file");
    sub->add_option("--seed", cfg.seed, "random walk seed");
    sub->add_option("--m", cfg.m, "f_m indices (comma-separated)")->delimiter(',');
    sub->add_option("--delta", cfg.delta, "offset right of t = 1");
    sub->add_flag("--assert", cfg.assert_mode, "exit 2 when a verdict fails");
    subs.emplace_back(sub, &c);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    check_out_dir(cfg);
    for (const auto& [sub, c] : subs) {
      if (sub->parsed()) return c->run(cfg, out);
    }
    err << "no subcommand\n";
    return kExitInvalid;
  } catch (const AssertFailure& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kExitAssertFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace pathwise
