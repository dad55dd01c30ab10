#include "loadbal/io.hpp"

#include <fstream>
#include <iostream>

#include "loadbal/errors.hpp"

namespace loadbal {

Json rational_to_json(const Rational& v) {
  if (denominator(v) == 1) {
    const BigInt& num = numerator(v);
    if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max()) {
      return Json(num.convert_to<std::int64_t>());
    }
  }
  return Json(to_string(v));
}

Rational rational_from_json(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(field + ": " + e.what());
    }
  }
  throw InputError(field + ": expected an integer or a rational string");
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("instance: expected a JSON object");
  if (!doc.contains("jobs") || !doc["jobs"].is_array()) throw InputError("jobs: missing or not an array");
  if (!doc.contains("machines") || !doc["machines"].is_array()) {
    throw InputError("machines: missing or not an array");
  }
  std::vector<std::int64_t> jobs;
  for (std::size_t j = 0; j < doc["jobs"].size(); ++j) {
    const Json& p = doc["jobs"][j];
    if (!p.is_number_integer()) throw InputError("job " + std::to_string(j) + ": processing time must be an integer");
    jobs.push_back(p.get<std::int64_t>());
  }
  std::vector<TargetInterval> machines;
  for (std::size_t i = 0; i < doc["machines"].size(); ++i) {
    const Json& m = doc["machines"][i];
    const std::string where = "machine " + std::to_string(i);
    if (!m.is_object() || !m.contains("lower") || !m.contains("upper")) {
      throw InputError(where + ": expected {\"lower\": .., \"upper\": ..}");
    }
    machines.push_back({rational_from_json(m["lower"], where + " lower"),
                        rational_from_json(m["upper"], where + " upper")});
  }
  return Instance(std::move(jobs), std::move(machines));
}

Json instance_to_json(const Instance& inst) {
  Json doc = Json::object();
  doc["jobs"] = Json::array();
  for (auto p : inst.jobs()) doc["jobs"].push_back(p);
  doc["machines"] = Json::array();
  for (const auto& t : inst.machines()) {
    doc["machines"].push_back({{"lower", rational_to_json(t.lower)}, {"upper", rational_to_json(t.upper)}});
  }
  return doc;
}

SolutionDocument solution_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("solution: expected a JSON object");
  SolutionDocument sol;
  if (!doc.contains("assignment") || !doc["assignment"].is_array()) {
    throw InputError("assignment: missing or not an array");
  }
  for (std::size_t j = 0; j < doc["assignment"].size(); ++j) {
    const Json& a = doc["assignment"][j];
    if (!a.is_number_unsigned() && !(a.is_number_integer() && a.get<std::int64_t>() >= 0)) {
      throw InputError("assignment " + std::to_string(j) + ": expected a machine index");
    }
    sol.assignment.push_back(a.get<std::size_t>());
  }
  if (doc.contains("loads")) {
    if (!doc["loads"].is_array()) throw InputError("loads: not an array");
    for (std::size_t i = 0; i < doc["loads"].size(); ++i) {
      sol.loads.push_back(rational_from_json(doc["loads"][i], "loads " + std::to_string(i)));
    }
  }
  if (doc.contains("objective_value") && !doc["objective_value"].is_null()) {
    sol.objective_value = rational_from_json(doc["objective_value"], "objective_value");
  }
  if (doc.contains("certified_bound") && !doc["certified_bound"].is_null()) {
    sol.certified_bound = rational_from_json(doc["certified_bound"], "certified_bound");
  }
  if (doc.contains("meta")) sol.meta = doc["meta"];
  return sol;
}

Json solution_to_json(const SolutionDocument& sol) {
  Json doc = Json::object();
  doc["assignment"] = sol.assignment;
  doc["loads"] = Json::array();
  for (const auto& l : sol.loads) doc["loads"].push_back(rational_to_json(l));
  doc["objective_value"] = sol.objective_value ? rational_to_json(*sol.objective_value) : Json(nullptr);
  doc["certified_bound"] = sol.certified_bound ? rational_to_json(*sol.certified_bound) : Json(nullptr);
  doc["meta"] = sol.meta;
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

}  // namespace loadbal
