#include "loadbal/objective.hpp"

#include <algorithm>

#include "loadbal/errors.hpp"

namespace loadbal {

const char* to_string(Objective o) {
  switch (o) {
    case Objective::Target: return "target";
    case Objective::Makespan: return "makespan";
    case Objective::Santa: return "santa";
    case Objective::Envy: return "envy";
  }
  return "?";
}

std::optional<Objective> parse_objective(std::string_view text) {
  for (Objective o : {Objective::Target, Objective::Makespan, Objective::Santa, Objective::Envy}) {
    if (text == to_string(o)) return o;
  }
  return std::nullopt;
}

std::int64_t objective_value(Objective o, std::span<const std::int64_t> loads) {
  if (loads.empty()) throw InputError("objective of an empty machine set");
  const auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
  switch (o) {
    case Objective::Makespan: return *hi;
    case Objective::Santa: return *lo;
    case Objective::Envy: return *hi - *lo;
    case Objective::Target: break;
  }
  throw InputError("target feasibility has no objective value");
}

bool at_least_as_good(Objective o, std::int64_t a, std::int64_t b) {
  return o == Objective::Santa ? a >= b : a <= b;
}

}  // namespace loadbal
