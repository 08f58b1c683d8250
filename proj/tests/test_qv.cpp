#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pathwise/qv.hpp"

using namespace pathwise;

namespace {

CadlagPath tent() { return CadlagPath::piecewise_linear({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}}); }

}  // namespace

TEST_CASE("sums on a tent by hand") {
  const auto x = tent();
  const auto p = make_fixed({0.0, 0.25, 0.5, 1.0});
  CHECK(values_at(x, p) == std::vector<double>{0.0, 0.5, 1.0, 0.0});
  CHECK(qv_stopped_sum(x, p, Instant(1.0)) == 1.5);
  CHECK(qv_stopped_sum(x, p, Instant(0.5)) == 0.5);
  CHECK(qv_stopped_sum(x, p, Instant(0.3)) == doctest::Approx(0.26));
  CHECK(qv_cdf_sum(x, p, Instant(0.3)) == 0.5);
  CHECK(qv_cdf_sum(x, p, Instant(0.5)) == 1.5);
  CHECK(qv_cdf_sum(x, p, Instant(0.2)) == 0.25);
  CHECK(qv_stopped_profile(x, p) == std::vector<double>{0.0, 0.25, 0.5, 1.5});
  CHECK(weighted_f2_sum(x, p, [](double v) { return v; }) == 1.125);
  CHECK(riemann_f1_sum(x, p, [](double v) { return v; }) == -0.75);
}

TEST_CASE("stopped and cdf sums agree at T and the profile is monotone") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<Knot> knots;
  for (int i = 0; i <= 50; ++i) knots.push_back({i / 50.0, g(rng)});
  const auto x = CadlagPath::piecewise_linear(knots);
  for (int k : {3, 17, 200}) {
    const auto p = make_uniform(1.0, k);
    const auto v = values_at(x, p);
    double direct = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) direct += (v[i] - v[i - 1]) * (v[i] - v[i - 1]);
    CHECK(qv_stopped_sum(x, p, Instant(1.0)) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(qv_cdf_sum(x, p, Instant(1.0)) == doctest::Approx(direct).epsilon(1e-13));
    const auto prof = qv_stopped_profile(x, p);
    for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i] >= prof[i - 1]);
    CHECK(weighted_f2_sum(x, p, [](double) { return 1.0; }) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("jump paths: each jump contributes its square") {
  const auto ind = make_named_path("indicator_half");
  for (int k : {2, 3, 10, 1000}) CHECK(qv_stopped_sum(ind, make_uniform(1.0, k), Instant(1.0)) == 1.0);
  const auto rw = make_random_walk(256, 1.0, 8);
  CHECK(qv_stopped_sum(rw, make_dyadic(1.0, 8), Instant(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(qv_stopped_sum(rw, make_dyadic(1.0, 10), Instant(0.5)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("limit diagnostic on a converging sequence") {
  std::vector<std::pair<std::int64_t, double>> v;
  for (std::int64_t n : {10, 100, 1000, 10000, 100000}) v.emplace_back(n, 2.0 + 1.0 / double(n));
  const auto d = estimate_limit(v, {1e-3, 0.0});
  CHECK(d.converged);
  REQUIRE(d.estimate.has_value());
  CHECK(*d.estimate == doctest::Approx(2.0).epsilon(1e-4));
  CHECK_FALSE(d.split_detected);
  const auto strict = estimate_limit(v, {1e-9, 0.0});
  CHECK_FALSE(strict.converged);
  const auto j = nlohmann::json::parse(d.to_json());
  CHECK(j["converged"] == true);
  CHECK(j["values"].size() == 5);
}

TEST_CASE("limit diagnostic separates the parities") {
  std::vector<std::pair<std::int64_t, double>> v;
  for (std::int64_t n = 1001; n <= 1012; ++n) v.emplace_back(n, (n % 2 ? 7.0 : 5.0) + 1.0 / double(n));
  const auto d = estimate_limit(v, {0.01, 0.0});
  CHECK_FALSE(d.converged);
  CHECK(d.split_detected);
  REQUIRE(d.odd_limit.has_value());
  REQUIRE(d.even_limit.has_value());
  CHECK(*d.odd_limit == doctest::Approx(7.0).epsilon(1e-3));
  CHECK(*d.even_limit == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("limit diagnostic input validation") {
  CHECK_THROWS_AS(estimate_limit({{1, 1.0}, {2, 1.0}, {3, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_limit({{1, 1.0}, {2, 1.0}, {2, 1.0}, {3, 1.0}}), std::invalid_argument);
  // unsorted input is fine
  const auto d = estimate_limit({{4, 1.0}, {1, 1.0}, {3, 1.0}, {2, 1.0}});
  CHECK(d.values.front().first == 1);
  CHECK(d.converged);
}
