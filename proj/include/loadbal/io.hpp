#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loadbal/instance.hpp"
#include "loadbal/rational.hpp"

namespace loadbal {

using Json = nlohmann::json;

/// Rationals are written as bare integers when integral, "a/b" otherwise.
Json rational_to_json(const Rational& v);
/// Accepts an integer or a rational string; `field` names the location in
/// error messages.
Rational rational_from_json(const Json& v, const std::string& field);

/// {"jobs": [p...], "machines": [{"lower": .., "upper": ..}, ...]}
Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& inst);

struct SolutionDocument {
  std::vector<std::size_t> assignment;    ///< machine index per job; empty when infeasible
  std::vector<Rational> loads;
  std::optional<Rational> objective_value;
  std::optional<Rational> certified_bound;
  Json meta = Json::object();

  friend bool operator==(const SolutionDocument&, const SolutionDocument&) = default;
};

SolutionDocument solution_from_json(const Json& doc);
Json solution_to_json(const SolutionDocument& sol);

/// Reads and parses a JSON file; throws InputError naming the path.
Json read_json_file(const std::string& path);
/// Writes `doc` with two-space indentation and a trailing newline. "-"
/// writes to stdout.
void write_json_file(const std::string& path, const Json& doc);

}  // namespace loadbal
