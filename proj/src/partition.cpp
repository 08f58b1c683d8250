#include "pathwise/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pathwise {

Partition::Partition(std::vector<Instant> breakpoints) : points_(std::move(breakpoints)) {
  if (points_.size() < 2) throw std::invalid_argument("partition: need at least two breakpoints");
  if (points_.front() != Instant(0.0)) throw std::invalid_argument("partition: first breakpoint must be 0");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1] < points_[i]))
      throw std::invalid_argument("partition: breakpoints must be strictly increasing");
  }
}

std::pair<Instant, Instant> Partition::bracket(const Instant& s) const {
  if (!(Instant(0.0) < s) || domain_end() < s) throw std::domain_error("bracket: s outside (0, T]");
  auto it = std::lower_bound(points_.begin(), points_.end(), s);
  return {*(it - 1), *it};
}

double Partition::mesh() const {
  double m = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) m = std::max(m, points_[i] - points_[i - 1]);
  return m;
}

std::string Partition::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : points_) {
    if (p.is_plain()) {
      arr.push_back(p.to_double());
    } else {
      arr.push_back(p.to_string());
    }
  }
  return arr.dump();
}

Partition make_uniform(double T, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("make_uniform: k must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("make_uniform: T must be positive");
  std::vector<Instant> pts;
  pts.reserve(static_cast<std::size_t>(k) + 1);
  for (std::int64_t i = 0; i < k; ++i) pts.emplace_back(static_cast<double>(i) * T / static_cast<double>(k));
  pts.emplace_back(T);
  return Partition(std::move(pts));
}

Partition make_dyadic(double T, int n) {
  if (n < 0 || n > 40) throw std::invalid_argument("make_dyadic: n must lie in [0, 40]");
  return make_uniform(T, std::int64_t{1} << n);
}

Partition make_fixed(const std::vector<double>& breakpoints) {
  std::vector<Instant> pts(breakpoints.begin(), breakpoints.end());
  return Partition(std::move(pts));
}

double osc_over_partition(const CadlagPath& path, const Partition& partition) {
  const auto& b = partition.breakpoints();
  double o = 0.0;
  for (std::size_t i = 1; i < b.size(); ++i) o = std::max(o, path.oscillation(b[i - 1], b[i]));
  return o;
}

Partition concat_reflected(const Partition& left, const Partition& right) {
  if (left.domain_end() != Instant(1.0) || right.domain_end() != Instant(1.0))
    throw std::invalid_argument("concat_reflected: both halves must be partitions of (0, 1]");
  std::vector<Instant> pts = left.breakpoints();
  const auto& r = right.breakpoints();
  pts.reserve(pts.size() + r.size());
  for (auto it = r.rbegin() + 1; it != r.rend(); ++it) pts.push_back(it->reflected());
  return Partition(std::move(pts));
}

Partition make_rho(std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("make_rho: n must be >= 1");
  return zigzag_lebesgue(n, Shift::from_double(alpha)).partition;
}

Partition make_sigma(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("make_sigma: n must be >= 1");
  const Partition r0 = make_rho(n, 0.0);
  const Partition rh = make_rho(n, 0.5);
  return n % 2 == 1 ? concat_reflected(r0, rh) : concat_reflected(rh, r0);
}

Partition make_tau(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("make_tau: n must be >= 1");
  const Partition r0 = make_rho(n, 0.0);
  return concat_reflected(r0, r0);
}

PartitionSequence PartitionSequence::uniform(double T) {
  return {"uniform", "", [T](std::int64_t n) { return make_uniform(T, n); }};
}

PartitionSequence PartitionSequence::dyadic(double T) {
  return {"dyadic", "", [T](std::int64_t n) { return make_dyadic(T, static_cast<int>(n)); }};
}

PartitionSequence PartitionSequence::fixed(Partition p) {
  std::ostringstream os;
  const auto& b = p.breakpoints();
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i].to_string();
  return {"fixed", os.str(), [p = std::move(p)](std::int64_t) { return p; }};
}

PartitionSequence PartitionSequence::rho(double alpha) {
  const Shift s = Shift::from_double(alpha);
  std::ostringstream os;
  os << alpha;
  return {"rho", os.str(), [s](std::int64_t n) {
            if (n < 1) throw std::invalid_argument("rho: n must be >= 1");
            return zigzag_lebesgue(n, s).partition;
          }};
}

PartitionSequence PartitionSequence::sigma() { return {"sigma", "", make_sigma}; }

PartitionSequence PartitionSequence::tau() { return {"tau", "", make_tau}; }

PartitionSequence PartitionSequence::parse(const std::string& text, double T) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto parse_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("partition spec: bad number '" + s + "'");
    return v;
  };
  if (head == "uniform" && tail.empty()) return uniform(T);
  if (head == "dyadic" && tail.empty()) return dyadic(T);
  if (head == "sigma" && tail.empty()) return sigma();
  if (head == "tau" && tail.empty()) return tau();
  if (head == "rho") return rho(tail.empty() ? 0.0 : parse_double(tail));
  if (head == "fixed") {
    std::vector<double> pts;
    std::stringstream ss(tail);
    std::string item;
    while (std::getline(ss, item, ',')) pts.push_back(parse_double(item));
    return fixed(make_fixed(pts));
  }
  throw std::invalid_argument("partition spec: unknown family '" + text + "'");
}

}  // namespace pathwise
