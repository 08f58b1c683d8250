#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "pathwise/assumptions.hpp"

using namespace pathwise;

TEST_CASE("indicator with the constant partition gives exact zeros") {
  const auto ind = make_named_path("indicator_half");
  const auto seq = PartitionSequence::fixed(make_fixed({0.0, 0.5, 1.0}));
  const auto a1 = check_A1(ind, seq, {0.5, 0.1}, {1, 2, 3});
  CHECK(a1.verdict);
  for (const auto& row : a1.values) {
    for (double v : row) CHECK(v == 0.0);
  }
  const auto a2 = check_A2(ind, seq, {0.25, 0.5, 0.75, 1.0}, {1, 2, 3});
  CHECK(a2.verdict);
  for (const auto& row : a2.values) {
    for (double v : row) CHECK(v == 0.0);
  }
}

TEST_CASE("a grid that misses the jump time fails A2") {
  const auto ind = make_named_path("indicator_half");
  const auto seq = PartitionSequence::fixed(make_fixed({0.0, 0.4, 1.0}));
  const auto a2 = check_A2(ind, seq, {0.75}, {1, 2, 3});
  CHECK_FALSE(a2.verdict);
  CHECK(a2.values[0][0] == 1.0);
  // eps above the jump keeps it in the path, and the row of the largest eps fails
  const auto a1 = check_A1(ind, PartitionSequence::dyadic(1.0), {2.0, 0.5}, {2, 4, 6});
  CHECK(a1.params.front() == 2.0);
  CHECK_FALSE(a1.row_verdicts.front());
  CHECK(a1.row_verdicts.back());
  CHECK(a1.verdict);
}

TEST_CASE("dyadic sequences pass on every demo path") {
  for (const char* name : {"z", "p", "q", "indicator_half"}) {
    const auto x = make_named_path(name);
    const double T = x.domain_end();
    const auto seq = PartitionSequence::dyadic(T);
    const auto a1 = check_A1(x, seq, {1.0, 0.5}, {4, 8, 12, 16, 20});
    const auto a2 = check_A2(x, seq, {T / 4, T / 2, 3 * T / 4, T}, {4, 8, 12, 16, 20});
    INFO(name);
    CHECK(a1.verdict);
    CHECK(a2.verdict);
  }
  const auto rw = make_random_walk(1024, 1.0, 3);
  const auto seq = PartitionSequence::dyadic(1.0);
  const auto a1 = check_A1(rw, seq, {1.0, 0.01}, {4, 6, 8, 10, 12});
  CHECK(a1.verdict);
  for (double v : a1.values.back()) CHECK(v == 0.0);
  // eps above the step size: nothing is removed and the oscillation settles at one step
  CHECK(a1.values.front().back() == doctest::Approx(1.0 / 32));
  CHECK(a1.values.front()[3] == a1.values.front()[4]);
  const auto a2 = check_A2(rw, seq, {0.3, 0.5, 1.0}, {4, 6, 8, 10, 12});
  CHECK(a2.verdict);
  for (const auto& row : a2.values) CHECK(row.back() == 0.0);
}

TEST_CASE("table layout") {
  const auto ind = make_named_path("indicator_half");
  const auto seq = PartitionSequence::fixed(make_fixed({0.0, 0.5, 1.0}));
  const auto a1 = check_A1(ind, seq, {0.1, 0.5}, {1, 2});
  CHECK(a1.name == "A1");
  CHECK(a1.params == std::vector<double>{0.5, 0.1});
  const auto csv = a1.to_csv();
  CHECK(csv.rfind("family,param,n,epsilon,value\n", 0) == 0);
  CHECK(a1.to_csv(false).find("family,") == std::string::npos);
  CHECK_THROWS_AS(check_A1(ind, seq, {}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(check_A1(ind, seq, {0.0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(check_A2(ind, seq, {0.5}, {}), std::invalid_argument);
}
