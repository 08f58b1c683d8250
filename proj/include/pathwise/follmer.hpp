#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pathwise/partition.hpp"
#include "pathwise/path.hpp"
#include "pathwise/qv.hpp"

namespace pathwise {

/// A C^2 function as (f, f', f'') on [lo, hi].
struct TestFunction {
  std::string name;
  ScalarFn f;
  ScalarFn f1;
  ScalarFn f2;
  double lo = -INFINITY;
  double hi = INFINITY;

  static TestFunction square();
  static TestFunction cube();
  static TestFunction exp();
  /// x -> a x + b
  static TestFunction affine(double a, double b);
  /// "square", "cube", "exp", "affine" (x -> 2x + 1).
  static TestFunction parse(const std::string& name);
};

/// f'' alone; only this enters the weighted sums.
class SecondDerivativeProfile {
 public:
  SecondDerivativeProfile(std::string name, ScalarFn f2) : name_(std::move(name)), f2_(std::move(f2)) {}

  /// 0 below 0, w on [0, 1], 1 on [1, 1 + 1/m], down to 0 at 1 + 2/m, 0 beyond.
  static SecondDerivativeProfile make_fm(std::int64_t m);
  /// 1 up to 1, 0 from 2 on, cubic smoothstep in between.
  static SecondDerivativeProfile make_smooth_cut();
  /// w -> w on [0, 1], 0 elsewhere: the pointwise limit of make_fm(m) as m grows.
  static SecondDerivativeProfile fm_limit();

  double operator()(double w) const { return f2_(w); }
  const std::string& name() const { return name_; }
  operator ScalarFn() const { return f2_; }  // NOLINT(google-explicit-constructor)

 private:
  std::string name_;
  ScalarFn f2_;
};

/// Non-decreasing right-continuous step function on [0, T].
class MonotoneStepFunction {
 public:
  struct Step {
    Instant time;
    double increment;
  };

  MonotoneStepFunction(double initial, std::vector<Step> steps, Instant T);

  double eval(const Instant& t) const;
  double initial() const { return initial_; }
  /// F(T), the initial value included.
  double total() const;
  const std::vector<Step>& steps() const { return steps_; }
  const Instant& domain_end() const { return T_; }

 private:
  double initial_;
  std::vector<Step> steps_;
  Instant T_;
};

/// Sum over jumps of size >= eps of f(x(t)) - f(x(t-)) - f'(x(t-)) dx - f''(x(t-)) dx^2 / 2.
double jump_term(const CadlagPath& path, const TestFunction& f, double epsilon);

/// Right-continuous step function from (time, value) samples taken in time
/// order. A time may be sampled twice, first F(t) then F(t+); the last
/// sample at each time wins.
MonotoneStepFunction rc_modification(const std::vector<std::pair<Instant, double>>& samples);

/// Integral of g over (0, T] against the measure of F.
double stieltjes_integral(const std::function<double(const Instant&)>& g, const MonotoneStepFunction& F);

/// Empirical [x] along a partition: stopped sums at the breakpoints, made
/// monotone by a running maximum, then right-continuous.
MonotoneStepFunction empirical_qv(const CadlagPath& path, const Partition& partition);

/// f(x(T)) - f(x(0)) - sum f'(x(u)) dx - (1/2) sum f''(x(u)) dx^2 - J(eps).
double follmer_residual(const CadlagPath& path, const Partition& partition, const TestFunction& f, double epsilon);

struct ResidualRow {
  std::string path;
  std::string family;
  std::int64_t n;
  std::string f;
  double epsilon;
  double residual;
};

/// "path,family,n,f,epsilon,residual"
std::string residual_csv(const std::vector<ResidualRow>& rows);

}  // namespace pathwise
