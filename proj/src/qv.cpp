#include "pathwise/qv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "pathwise/compensated_sum.hpp"

namespace pathwise {

namespace {

void check_t(const Partition& partition, const Instant& t) {
  if (t < Instant(0.0) || partition.domain_end() < t) throw std::domain_error("time outside [0, T]");
}

void check_domain(const CadlagPath& path, const Partition& partition) {
  if (partition.domain_end() != Instant(path.domain_end()))
    throw std::invalid_argument("partition and path have different domains");
}

double square(double x) { return x * x; }

}  // namespace

std::vector<double> values_at(const CadlagPath& path, const Partition& partition) {
  check_domain(path, partition);
  std::vector<double> v;
  v.reserve(partition.breakpoints().size());
  for (const auto& b : partition.breakpoints()) v.push_back(path.eval(b));
  return v;
}

double qv_cdf_sum(const CadlagPath& path, const Partition& partition, const Instant& t) {
  check_t(partition, t);
  const auto x = values_at(path, partition);
  const auto& b = partition.breakpoints();
  CompensatedSum s;
  for (std::size_t i = 1; i < b.size() && b[i - 1] <= t; ++i) s += square(x[i] - x[i - 1]);
  return s.get();
}

double qv_stopped_sum(const CadlagPath& path, const Partition& partition, const Instant& t) {
  check_t(partition, t);
  const auto x = values_at(path, partition);
  const auto& b = partition.breakpoints();
  CompensatedSum s;
  for (std::size_t i = 1; i < b.size() && b[i - 1] < t; ++i) {
    if (b[i] <= t) {
      s += square(x[i] - x[i - 1]);
    } else {
      s += square(path.eval(t) - x[i - 1]);
    }
  }
  return s.get();
}

std::vector<double> qv_stopped_profile(const CadlagPath& path, const Partition& partition) {
  const auto x = values_at(path, partition);
  std::vector<double> out{0.0};
  out.reserve(x.size());
  CompensatedSum s;
  for (std::size_t i = 1; i < x.size(); ++i) {
    s += square(x[i] - x[i - 1]);
    out.push_back(s.get());
  }
  return out;
}

double weighted_f2_sum(const CadlagPath& path, const Partition& partition, const ScalarFn& f2) {
  const auto x = values_at(path, partition);
  CompensatedSum s;
  for (std::size_t i = 1; i < x.size(); ++i) s += f2(x[i - 1]) * square(x[i] - x[i - 1]);
  return s.get();
}

double riemann_f1_sum(const CadlagPath& path, const Partition& partition, const ScalarFn& f1) {
  const auto x = values_at(path, partition);
  CompensatedSum s;
  for (std::size_t i = 1; i < x.size(); ++i) s += f1(x[i - 1]) * (x[i] - x[i - 1]);
  return s.get();
}

namespace {

// Last (up to) three values pairwise within tol of each other.
std::optional<double> settled(const std::vector<double>& v, const LimitTolerance& tol) {
  if (v.size() < 2) return std::nullopt;
  const double est = v.back();
  const double thr = std::max(tol.abs, tol.rel * std::fabs(est));
  const std::size_t from = v.size() >= 3 ? v.size() - 3 : 0;
  for (std::size_t i = from; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (std::fabs(v[i] - v[j]) > thr) return std::nullopt;
    }
  }
  return est;
}

}  // namespace

LimitDiagnostic estimate_limit(std::vector<std::pair<std::int64_t, double>> values, const LimitTolerance& tol) {
  if (values.size() < 4) throw std::invalid_argument("estimate_limit: need at least four values");
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i].first == values[i - 1].first) throw std::invalid_argument("estimate_limit: repeated n");
  }
  LimitDiagnostic d;
  d.values = values;
  d.tol_abs = tol.abs;
  d.tol_rel = tol.rel;
  std::vector<double> all;
  std::vector<double> even;
  std::vector<double> odd;
  for (const auto& [n, v] : values) {
    all.push_back(v);
    (n % 2 == 0 ? even : odd).push_back(v);
  }
  d.estimate = settled(all, tol);
  d.converged = d.estimate.has_value();
  d.even_limit = settled(even, tol);
  d.odd_limit = settled(odd, tol);
  if (d.even_limit && d.odd_limit) {
    const double scale = std::max(std::fabs(*d.even_limit), std::fabs(*d.odd_limit));
    d.split_detected = std::fabs(*d.even_limit - *d.odd_limit) > 5.0 * std::max(tol.abs, tol.rel * scale);
  }
  return d;
}

std::string LimitDiagnostic::to_json() const {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json vals = json::array();
  for (const auto& [n, v] : values) vals.push_back({n, v});
  json j{{"values", vals},
         {"estimate", opt(estimate)},
         {"even_limit", opt(even_limit)},
         {"odd_limit", opt(odd_limit)},
         {"converged", converged},
         {"split_detected", split_detected},
         {"tol_abs", tol_abs},
         {"tol_rel", tol_rel}};
  return j.dump();
}

}  // namespace pathwise
