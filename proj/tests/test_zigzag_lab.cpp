#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pathwise/partition.hpp"
#include "pathwise/zigzag_lab.hpp"

using namespace pathwise;

namespace {

// 2 * zeta(2, 1 + alpha), 30-digit Hurwitz zeta evaluation
const std::map<double, double> kL{
    {0.0, 3.2898681336964528729},  {0.1, 2.8665983015855176138},  {0.25, 2.3946583090142214785},
    {0.5, 1.8696044010893586188},  {0.75, 1.5282037397876574412}, {0.9, 1.3759441164852712101},
    {0.999, 1.2906768555440890896},
};

}  // namespace

TEST_CASE("L(alpha) series and oracle against Hurwitz zeta") {
  for (const auto& [alpha, want] : kL) {
    const auto r = l_alpha_series(alpha, 100000);
    CHECK(r.series_value == doctest::Approx(want).epsilon(1e-12));
    CHECK(r.oracle_value == doctest::Approx(want).epsilon(1e-12));
    CHECK(std::fabs(r.series_value - r.oracle_value) <= r.tail_bound);
    CHECK(r.terms_used == 100000);
  }
  CHECK(l_alpha_series(0.0, 100000).series_value == doctest::Approx(std::numbers::pi * std::numbers::pi / 3).epsilon(1e-13));
  CHECK(l_alpha_series(0.5, 100000).series_value == doctest::Approx(std::numbers::pi * std::numbers::pi - 8).epsilon(1e-13));
  // even a short series lands inside its bound
  const auto short_run = l_alpha_series(0.3, 10);
  CHECK(std::fabs(short_run.series_value - short_run.oracle_value) <= short_run.tail_bound);
  CHECK_THROWS_AS(l_alpha_series(0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(l_alpha_oracle(1.5), std::domain_error);
}

TEST_CASE("L is decreasing with limit pi^2/3 - 2 at 1") {
  double prev = INFINITY;
  for (int i = 0; i <= 20; ++i) {
    const double a = 0.05 * i;
    const double v = l_alpha_oracle(a);
    CHECK(v < prev);
    prev = v;
    if (a < 1.0) {
      const auto r = l_alpha_series(a, 1000);
      CHECK(std::fabs(r.series_value - v) <= r.tail_bound + 1e-14);
    }
  }
  CHECK(l_alpha_oracle(1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 3 - 2).epsilon(1e-12));
}

TEST_CASE("count formula against exact values") {
  // 2 * sum_m floor(sqrt(n/m) - alpha), evaluated in rationals
  CHECK(count_formula(1, 0.0) == 2);
  CHECK(count_formula(4, 0.0) == 10);
  CHECK(count_formula(100, 0.0) == 306);
  CHECK(count_formula(100, 0.5) == 160);
  CHECK(count_formula(1000, 0.25) == 2304);
  CHECK(count_formula(10000, 0.0) == 32614);
  CHECK(count_formula(10000, 0.5) == 18406);
  CHECK(empirical_l(10000, 0.0) == 3.2614);
}

TEST_CASE("bucket identity holds exactly") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::int64_t> n_dist(1, 1000000);
  std::uniform_int_distribution<int> a_dist(0, 19);
  for (int i = 0; i < 60; ++i) {
    const std::int64_t n = n_dist(rng);
    const double alpha = a_dist(rng) / 20.0;
    std::int64_t twice = 0;
    for (const auto& [l, L] : bucket_counts(n, alpha)) twice += 2 * l * L;
    CHECK(twice == count_formula(n, alpha));
  }
}

TEST_CASE("geometric count exceeds the formula by a constant") {
  for (double alpha : {0.0, 0.1, 0.25, 0.5, 0.9}) {
    const std::int64_t off = boundary_offset(alpha);
    CHECK(off == (alpha == 0.0 ? 1 : 2));
    for (std::int64_t n = 1; n <= 1500; ++n) {
      const auto geo = zigzag_lebesgue_count(n, Shift::from_double(alpha));
      if (geo - count_formula(n, alpha) != off) {
        FAIL_CHECK("offset breaks at n = " << n << ", alpha = " << alpha);
        break;
      }
    }
  }
  const auto r = count_intervals(400, 0.25, true);
  REQUIRE(r.geometric_count.has_value());
  CHECK(*r.geometric_count == r.formula_count + 2);
  CHECK_FALSE(count_intervals(400, 0.25, false).geometric_count.has_value());
  CHECK(nlohmann::json::parse(r.to_json())["boundary_offset"] == 2);
}

TEST_CASE("stopped sum at 1 is the interval count times 1/n up to the boundary") {
  const auto z = make_named_path("z");
  for (double alpha : {0.0, 0.25, 0.5}) {
    for (std::int64_t n : {9, 64, 500, 2000}) {
      const auto p = make_rho(n, alpha);
      const double qv = qv_stopped_sum(z, p, Instant(1.0));
      const double interior = double(p.interval_count()) / double(n);
      CHECK(std::fabs(qv - interior) <= 2.0 / double(n));
    }
  }
}

TEST_CASE("experiment report plumbing") {
  const auto r = zigzag_qv_experiment(0.0, {400, 800, 1600, 3200}, {0.5, 1.0});
  CHECK(r.rows.size() == 8);
  CHECK(r.diagnostic("t=1").values.size() == 4);
  CHECK_THROWS_AS(r.diagnostic("t=7"), std::out_of_range);
  CHECK(r.figure("L(alpha)") == doctest::Approx(kL.at(0.0)));
  const auto csv = experiment_csv(r.rows);
  CHECK(csv.rfind("experiment,alpha,n,t,value,diag\n", 0) == 0);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.contains("verdicts"));
  CHECK(j["experiment"] == r.name);
  // same inputs, same bytes
  CHECK(experiment_csv(zigzag_qv_experiment(0.0, {400, 800, 1600, 3200}, {0.5, 1.0}).rows) == csv);
}

TEST_CASE("p along sigma splits by parity already at moderate n") {
  const auto r = p_alternation_experiment({2001, 2002, 4001, 4002, 8001, 8002, 16001, 16002}, {0.1, 0.0});
  const auto& d = r.diagnostic("t=1");
  REQUIRE(d.odd_limit.has_value());
  REQUIRE(d.even_limit.has_value());
  CHECK(d.split_detected);
  CHECK(*d.odd_limit == doctest::Approx(kL.at(0.0) + 4).epsilon(0.02));
  CHECK(*d.even_limit == doctest::Approx(kL.at(0.5) + 4).epsilon(0.02));
}
