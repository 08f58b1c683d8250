#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pathwise/cli.hpp"

using namespace pathwise;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  const auto d = std::filesystem::temp_directory_path() / "pathwise_cli_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("l-alpha prints series, oracle and bound") {
  const auto r = run({"l-alpha", "--alpha", "0", "--terms", "100000", "--assert"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["series_value"].get<double>() == doctest::Approx(3.289868133696453).epsilon(1e-12));
  CHECK(j.contains("oracle_value"));
  CHECK(j.contains("tail_bound"));
}

TEST_CASE("formula-check on the indicator") {
  const auto r = run({"formula-check", "--path", "indicator_half", "--partition", "fixed:0,0.5,1", "--f", "square",
                      "--eps", "0.5", "--assert"});
  CHECK(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["residual"] == 0.0);
  const auto inline_json = run({"formula-check", "--path", R"({"type":"piecewise_constant","T":1,"jumps":[[0.5,1]]})",
                                "--partition", "fixed:0,0.5,1", "--f", "cube", "--eps", "0.5", "--assert"});
  CHECK(inline_json.code == kExitOk);
}

TEST_CASE("validation errors exit with 1") {
  CHECK(run({}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"l-alpha", "--colour", "red"}).code == kExitInvalid);
  CHECK(run({"l-alpha", "--alpha", "1.5"}).code == kExitInvalid);
  CHECK(run({"count", "--alpha", "-0.1"}).code == kExitInvalid);
  CHECK(run({"formula-check", "--path", "{\"type\":\"q\",\"extra\":1}", "--partition", "tau", "--n", "4"}).code ==
        kExitInvalid);
  CHECK(run({"formula-check", "--path", "{oops", "--partition", "fixed:0,1"}).code == kExitInvalid);
  CHECK(run({"formula-check", "--path", "z", "--partition", "rho:0"}).code == kExitInvalid);
  CHECK(run({"formula-check", "--path", "@/nonexistent/spec.json", "--partition", "fixed:0,1"}).code == kExitInvalid);
  const auto missing = run({"l-alpha", "--out", "/nonexistent/dir/out.csv"});
  CHECK(missing.code == kExitInvalid);
  CHECK(missing.out.empty());
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("failed verdicts exit with 2 only under --assert") {
  // t = 0.9 has not vanished yet at n = 1000
  const std::vector<std::string> args{"zigzag-qv", "--alpha", "0", "--n", "250,500,750,1000", "--t", "0.9"};
  CHECK(run(args).code == kExitOk);
  auto with_assert = args;
  with_assert.push_back("--assert");
  CHECK(run(with_assert).code == kExitAssertFailed);
}

TEST_CASE("CSV output is byte-identical across runs") {
  const auto dir = scratch_dir();
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  for (const auto& [sub, extra] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"zigzag-qv", {"--alpha", "0.25", "--n", "100,200,400,800"}},
           {"corollary-check", {"--seed", "3"}},
           {"count", {"--n", "10,100,1000", "--alpha", "0.5"}},
           {"assumptions", {"--path", "q", "--partition", "dyadic", "--n", "4,8,12"}}}) {
    std::vector<std::string> args{sub};
    args.insert(args.end(), extra.begin(), extra.end());
    auto argsa = args;
    argsa.insert(argsa.end(), {"--out", a.string()});
    auto argsb = args;
    argsb.insert(argsb.end(), {"--out", b.string()});
    REQUIRE(run(argsa).code == kExitOk);
    REQUIRE(run(argsb).code == kExitOk);
    INFO(sub);
    CHECK_FALSE(slurp(a).empty());
    CHECK(slurp(a) == slurp(b));
  }
}

TEST_CASE("path spec from a file") {
  const auto spec = scratch_dir() / "walk.json";
  {
    std::ofstream f(spec);
    f << R"({"type":"random_walk","steps":256,"seed":7})";
  }
  const auto r = run({"formula-check", "--path", "@" + spec.string(), "--partition", "dyadic:8", "--f", "square",
                      "--eps", "1", "--assert"});
  CHECK(r.code == kExitOk);
}

TEST_CASE("every subcommand runs on a small grid") {
  CHECK(run({"count", "--n", "1,4,100", "--alpha", "0", "--assert"}).code == kExitOk);
  CHECK(run({"p-alternation", "--nmax", "4000"}).code == kExitOk);
  CHECK(run({"q-jump", "--nmax", "4000", "--delta", "0.25"}).code == kExitOk);
  CHECK(run({"nonrepresentation", "--nmax", "2000", "--m", "1,2"}).code == kExitOk);
  CHECK(run({"corollary-check", "--seed", "11", "--assert"}).code == kExitOk);
  CHECK(run({"assumptions", "--path", "indicator_half", "--partition", "fixed:0,0.5,1", "--assert"}).code == kExitOk);
  const auto leb = run({"leb-partition", "--path", "z", "--n", "9", "--alpha", "0.5"});
  CHECK(leb.code == kExitOk);
  CHECK(nlohmann::json::parse(leb.out)["intervals"] == 12);  // count_formula(9, 1/2) = 10, plus the two boundary intervals
}
