#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pathwise/path.hpp"

namespace pathwise {

namespace {

using nlohmann::json;

std::vector<Knot> read_pairs(const json& j, const char* key) {
  if (!j.is_array()) throw std::invalid_argument(std::string("path spec: '") + key + "' must be an array");
  std::vector<Knot> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::invalid_argument(std::string("path spec: '") + key + "' entries must be [t, v] pairs");
    out.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i].time > out[i - 1].time))
      throw std::invalid_argument(std::string("path spec: '") + key + "' times must be strictly increasing");
  }
  return out;
}

double read_number(const json& j, const char* key) {
  if (!j.is_number()) throw std::invalid_argument(std::string("path spec: '") + key + "' must be a number");
  return j.get<double>();
}

void only_keys(const json& j, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) throw std::invalid_argument("path spec: key '" + k + "' not allowed here");
  }
}

}  // namespace

CadlagPath path_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("path spec: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw std::invalid_argument("path spec: expected an object with a string 'type'");
  const auto type = j["type"].get<std::string>();

  if (type == "zigzag_z" || type == "p" || type == "q" || type == "indicator_half") {
    only_keys(j, {"type", "T"});
    CadlagPath path = make_named_path(type);
    if (j.contains("T") && read_number(j["T"], "T") != path.domain_end())
      throw std::invalid_argument("path spec: T does not match the domain of '" + type + "'");
    return path;
  }
  if (type == "piecewise_linear") {
    only_keys(j, {"type", "T", "knots"});
    if (!j.contains("knots")) throw std::invalid_argument("path spec: piecewise_linear needs 'knots'");
    auto knots = read_pairs(j["knots"], "knots");
    CadlagPath path = CadlagPath::piecewise_linear(std::move(knots));
    if (j.contains("T") && read_number(j["T"], "T") != path.domain_end())
      throw std::invalid_argument("path spec: last knot must sit at T");
    return path;
  }
  if (type == "piecewise_constant") {
    only_keys(j, {"type", "T", "jumps", "initial"});
    if (!j.contains("T")) throw std::invalid_argument("path spec: piecewise_constant needs 'T'");
    const double T = read_number(j["T"], "T");
    const double initial = j.contains("initial") ? read_number(j["initial"], "initial") : 0.0;
    auto jumps = j.contains("jumps") ? read_pairs(j["jumps"], "jumps") : std::vector<Knot>{};
    return CadlagPath::piecewise_constant(T, initial, std::move(jumps));
  }
  if (type == "random_walk") {
    only_keys(j, {"type", "T", "steps", "seed"});
    if (!j.contains("steps") || !j["steps"].is_number_integer())
      throw std::invalid_argument("path spec: random_walk needs integer 'steps'");
    const double T = j.contains("T") ? read_number(j["T"], "T") : 1.0;
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
      if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0)
        throw std::invalid_argument("path spec: 'seed' must be a non-negative integer");
      seed = j["seed"].get<std::uint64_t>();
    }
    return make_random_walk(j["steps"].get<std::int64_t>(), T, seed);
  }
  throw std::invalid_argument("path spec: unknown type '" + type + "'");
}

}  // namespace pathwise
