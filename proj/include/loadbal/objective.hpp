#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace loadbal {

enum class Objective { Target, Makespan, Santa, Envy };

const char* to_string(Objective o);
std::optional<Objective> parse_objective(std::string_view text);

/// Value of the objective on a load vector (Target is not a value objective).
std::int64_t objective_value(Objective o, std::span<const std::int64_t> loads);

/// True iff `a` is at least as good as `b` for the objective.
bool at_least_as_good(Objective o, std::int64_t a, std::int64_t b);

}  // namespace loadbal
