#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pathwise/compensated_sum.hpp"
#include "pathwise/follmer.hpp"

using namespace pathwise;

TEST_CASE("test-function derivatives by central differences") {
  for (const auto& f : {TestFunction::square(), TestFunction::cube(), TestFunction::exp(), TestFunction::affine(2, 1)}) {
    for (double x : {-1.3, -0.2, 0.0, 0.7, 2.1}) {
      const double h = 1e-4;
      CHECK(f.f1(x) == doctest::Approx((f.f(x + h) - f.f(x - h)) / (2 * h)).epsilon(1e-7));
      CHECK(f.f2(x) == doctest::Approx((f.f1(x + h) - f.f1(x - h)) / (2 * h)).epsilon(1e-7));
    }
  }
  CHECK(TestFunction::parse("affine").f(3.0) == 7.0);
  CHECK_THROWS_AS(TestFunction::parse("sine"), std::invalid_argument);
}

TEST_CASE("f''_m profile and its pointwise limit") {
  const auto f1 = SecondDerivativeProfile::make_fm(1);
  const auto f4 = SecondDerivativeProfile::make_fm(4);
  CHECK(f4(-0.5) == 0.0);
  CHECK(f4(0.3) == 0.3);
  CHECK(f4(1.0) == 1.0);
  CHECK(f4(1.2) == 1.0);
  CHECK(f4(1.375) == doctest::Approx(0.5));
  CHECK(f4(1.5) == doctest::Approx(0.0));
  CHECK(f4(1.6) == 0.0);
  CHECK(f1(1.5) == 1.0);
  CHECK(f1(2.5) == 0.5);
  const auto lim = SecondDerivativeProfile::fm_limit();
  for (double w : {-1.0, 0.0, 0.4, 1.0, 1.001, 2.0}) {
    CHECK(SecondDerivativeProfile::make_fm(100000)(w) == doctest::Approx(lim(w)).epsilon(1e-12));
  }
  CHECK(lim(1.001) == 0.0);
  CHECK_THROWS_AS(SecondDerivativeProfile::make_fm(0), std::invalid_argument);
  const auto cut = SecondDerivativeProfile::make_smooth_cut();
  CHECK(cut(0.5) == 1.0);
  CHECK(cut(1.5) == 0.5);
  CHECK(cut(2.5) == 0.0);
  for (double w = 1.0; w < 2.0; w += 0.01) CHECK(cut(w + 0.01) <= cut(w));
}

TEST_CASE("step functions and the Stieltjes integral") {
  const MonotoneStepFunction F(1.0, {{Instant(0.25), 1.0}, {Instant(0.5), 2.0}}, Instant(1.0));
  CHECK(F.eval(Instant(0.2)) == 1.0);
  CHECK(F.eval(Instant(0.25)) == 2.0);
  CHECK(F.eval(Instant(0.75)) == 4.0);
  CHECK(F.total() == 4.0);  // F(T)
  CHECK(stieltjes_integral([](const Instant& t) { return t.to_double(); }, F) == 1.25);
  CHECK_THROWS_AS(MonotoneStepFunction(0.0, {{Instant(0.5), -1.0}}, Instant(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneStepFunction(0.0, {{Instant(0.0), 1.0}}, Instant(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneStepFunction(0.0, {{Instant(0.5), 1.0}, {Instant(0.5), 1.0}}, Instant(1.0)),
                  std::invalid_argument);
}

TEST_CASE("right-continuous modification keeps the last sample at a time") {
  const auto F = rc_modification({{Instant(0.0), 0.0}, {Instant(0.5), 1.0}, {Instant(0.5), 3.0}, {Instant(1.0), 3.0}});
  CHECK(F.eval(Instant(0.4)) == 0.0);
  CHECK(F.eval(Instant(0.5)) == 3.0);
  CHECK(F.total() == 3.0);
  REQUIRE(F.steps().size() == 1);
  CHECK_THROWS_AS(rc_modification({}), std::invalid_argument);
  CHECK_THROWS_AS(rc_modification({{Instant(0.0), 1.0}, {Instant(0.5), 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(rc_modification({{Instant(0.5), 1.0}, {Instant(0.2), 2.0}}), std::invalid_argument);
}

TEST_CASE("indicator path: residual vanishes by hand") {
  const auto ind = make_named_path("indicator_half");
  const auto p = make_fixed({0.0, 0.5, 1.0});
  CHECK(jump_term(ind, TestFunction::square(), 0.5) == 0.0);
  CHECK(follmer_residual(ind, p, TestFunction::square(), 0.5) == 0.0);
  // cube: the jump 0 -> 1 leaves a Taylor defect of 1
  CHECK(jump_term(ind, TestFunction::cube(), 0.5) == 1.0);
  CHECK(follmer_residual(ind, p, TestFunction::cube(), 0.5) == 0.0);
  CHECK(follmer_residual(ind, p, TestFunction::cube(), 1.5) == 1.0);
  CHECK_THROWS_AS(jump_term(ind, TestFunction::cube(), 0.0), std::domain_error);
}

TEST_CASE("residual equals the per-step Taylor remainder on a random walk") {
  for (int k : {6, 8, 10}) {
    const std::int64_t N = std::int64_t{1} << k;
    const auto x = make_random_walk(N, 1.0, 99);
    const auto part = make_dyadic(1.0, k);
    const auto v = values_at(x, part);
    CompensatedSum cube;
    CompensatedSum ex;
    for (std::size_t i = 1; i < v.size(); ++i) {
      const double d = v[i] - v[i - 1];
      cube += d * d * d;
      ex += std::exp(v[i - 1]) * (std::expm1(d) - d - 0.5 * d * d);
    }
    // eps above the step size: no jump is compensated
    CHECK(follmer_residual(x, part, TestFunction::cube(), 1.0) == doctest::Approx(cube.get()).epsilon(1e-9));
    CHECK(std::fabs(follmer_residual(x, part, TestFunction::exp(), 1.0) - ex.get()) <= 1e-12);
    CHECK(std::fabs(follmer_residual(x, part, TestFunction::square(), 1.0)) <= 1e-12);
    CHECK(std::fabs(follmer_residual(x, part, TestFunction::affine(2, 1), 1.0)) <= 1e-12);
    // eps below it: every step is a jump and the jump term absorbs the remainder
    CHECK(std::fabs(follmer_residual(x, part, TestFunction::cube(), 1e-3)) <= 1e-12);
  }
}

TEST_CASE("empirical quadratic variation and the corollary identity") {
  const auto ind = make_named_path("indicator_half");
  const auto qv = empirical_qv(ind, make_fixed({0.0, 0.5, 1.0}));
  CHECK(qv.eval(Instant(0.4)) == 0.0);
  CHECK(qv.eval(Instant(0.5)) == 1.0);
  const auto rw = make_random_walk(1024, 1.0, 5);
  const auto part = make_dyadic(1.0, 10);
  const auto F = empirical_qv(rw, part);
  CHECK(F.total() == doctest::Approx(1.0).epsilon(1e-14));
  const auto sq = TestFunction::square();
  const auto cb = TestFunction::cube();
  CHECK(stieltjes_integral([&](const Instant& t) { return sq.f2(rw.left_limit(t)); }, F) ==
        doctest::Approx(weighted_f2_sum(rw, part, sq.f2)).epsilon(1e-12));
  CHECK(stieltjes_integral([&](const Instant& t) { return cb.f2(rw.left_limit(t)); }, F) ==
        doctest::Approx(weighted_f2_sum(rw, part, cb.f2)).epsilon(1e-9));
}

TEST_CASE("residual CSV layout") {
  const auto csv = residual_csv({{"z", "rho", 10, "cube", 0.5, 0.0}});
  CHECK(csv.rfind("path,family,n,f,epsilon,residual\n", 0) == 0);
  CHECK(csv.find("z,rho,10,cube,") != std::string::npos);
}
