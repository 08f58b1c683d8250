#include "pathwise/follmer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "pathwise/compensated_sum.hpp"

namespace pathwise {

TestFunction TestFunction::square() {
  return {"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }, [](double) { return 2.0; }};
}

TestFunction TestFunction::cube() {
  return {"cube", [](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; },
          [](double x) { return 6.0 * x; }};
}

TestFunction TestFunction::exp() {
  return {"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
          [](double x) { return std::exp(x); }};
}

TestFunction TestFunction::affine(double a, double b) {
  return {"affine", [a, b](double x) { return a * x + b; }, [a](double) { return a; }, [](double) { return 0.0; }};
}

TestFunction TestFunction::parse(const std::string& name) {
  if (name == "square") return square();
  if (name == "cube") return cube();
  if (name == "exp") return exp();
  if (name == "affine") return affine(2.0, 1.0);
  throw std::invalid_argument("unknown test function '" + name + "'");
}

SecondDerivativeProfile SecondDerivativeProfile::make_fm(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("make_fm: m must be >= 1");
  const double inv = 1.0 / static_cast<double>(m);
  const double md = static_cast<double>(m);
  return {fmt::format("f_{}", m), [inv, md](double w) {
            if (w <= 0.0) return 0.0;
            if (w <= 1.0) return w;
            if (w <= 1.0 + inv) return 1.0;
            if (w <= 1.0 + 2.0 * inv) return 1.0 - md * (w - 1.0 - inv);
            return 0.0;
          }};
}

SecondDerivativeProfile SecondDerivativeProfile::make_smooth_cut() {
  return {"smooth_cut", [](double w) {
            if (w <= 1.0) return 1.0;
            if (w >= 2.0) return 0.0;
            const double u = w - 1.0;
            return 1.0 - u * u * (3.0 - 2.0 * u);
          }};
}

SecondDerivativeProfile SecondDerivativeProfile::fm_limit() {
  return {"f_limit", [](double w) { return (w >= 0.0 && w <= 1.0) ? w : 0.0; }};
}

MonotoneStepFunction::MonotoneStepFunction(double initial, std::vector<Step> steps, Instant T)
    : initial_(initial), steps_(std::move(steps)), T_(T) {
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (!(steps_[i].increment >= 0.0)) throw std::invalid_argument("monotone step function: negative increment");
    if (!(Instant(0.0) < steps_[i].time) || T_ < steps_[i].time)
      throw std::invalid_argument("monotone step function: step time outside (0, T]");
    if (i > 0 && !(steps_[i - 1].time < steps_[i].time))
      throw std::invalid_argument("monotone step function: step times must be strictly increasing");
  }
}

double MonotoneStepFunction::eval(const Instant& t) const {
  CompensatedSum s(initial_);
  for (const auto& st : steps_) {
    if (t < st.time) break;
    s += st.increment;
  }
  return s.get();
}

double MonotoneStepFunction::total() const { return eval(T_); }

double jump_term(const CadlagPath& path, const TestFunction& f, double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("jump_term: epsilon must be positive");
  CompensatedSum s;
  for (const auto& j : path.jump_set(epsilon)) {
    const double before = path.left_limit(j.time);
    const double after = path.eval(j.time);
    const double dx = after - before;
    s += f.f(after) - f.f(before) - f.f1(before) * dx - 0.5 * f.f2(before) * dx * dx;
  }
  return s.get();
}

MonotoneStepFunction rc_modification(const std::vector<std::pair<Instant, double>>& samples) {
  if (samples.empty()) throw std::invalid_argument("rc_modification: no samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].first < samples[i - 1].first)
      throw std::invalid_argument("rc_modification: sample times must be non-decreasing");
    if (samples[i].second < samples[i - 1].second)
      throw std::invalid_argument("rc_modification: sampled function is decreasing");
  }
  // value at the first sample time; later samples at the same time replace it
  std::size_t i = 0;
  while (i + 1 < samples.size() && samples[i + 1].first == samples[0].first) ++i;
  const double initial = samples[i].second;
  double level = initial;
  std::vector<MonotoneStepFunction::Step> steps;
  for (++i; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1].first == samples[i].first) continue;
    if (samples[i].second > level) steps.push_back({samples[i].first, samples[i].second - level});
    level = samples[i].second;
  }
  return MonotoneStepFunction(initial, std::move(steps), samples.back().first);
}

double stieltjes_integral(const std::function<double(const Instant&)>& g, const MonotoneStepFunction& F) {
  CompensatedSum s;
  for (const auto& st : F.steps()) s += g(st.time) * st.increment;
  return s.get();
}

MonotoneStepFunction empirical_qv(const CadlagPath& path, const Partition& partition) {
  const auto profile = qv_stopped_profile(path, partition);
  const auto& b = partition.breakpoints();
  std::vector<std::pair<Instant, double>> samples;
  samples.reserve(b.size());
  double running = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    running = std::max(running, profile[i]);
    samples.emplace_back(b[i], running);
  }
  return rc_modification(samples);
}

double follmer_residual(const CadlagPath& path, const Partition& partition, const TestFunction& f, double epsilon) {
  const double T = path.domain_end();
  const double lhs = f.f(path.eval(Instant(T))) - f.f(path.eval(Instant(0.0)));
  const double riemann = riemann_f1_sum(path, partition, f.f1);
  const double weighted = weighted_f2_sum(path, partition, f.f2);
  const double jumps = jump_term(path, f, epsilon);
  CompensatedSum s(lhs);
  s += -riemann;
  s += -0.5 * weighted;
  s += -jumps;
  return s.get();
}

std::string residual_csv(const std::vector<ResidualRow>& rows) {
  std::string out = "path,family,n,f,epsilon,residual\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{:.17g},{:.17g}\n", r.path, r.family, r.n, r.f, r.epsilon, r.residual);
  }
  return out;
}

}  // namespace pathwise
