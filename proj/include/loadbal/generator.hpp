#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/objective.hpp"

namespace loadbal {

struct GeneratorOptions {
  std::size_t n = 8;
  std::size_t m = 2;
  std::int64_t pmax = 10;
  std::size_t k_intervals = 1;
  Objective style = Objective::Target;
  std::uint64_t seed = 1;
  /// Jobs form m groups of equal total size; intervals are [0, sum p].
  bool planted_balance = false;
};

/// Deterministic for a fixed option set. Target style plants a random
/// assignment and derives k_intervals distinct-ish intervals around its
/// loads, so the instance is feasible. Other styles give every machine
/// [0, sum p]. Throws InputError on impossible combinations.
Instance generate_instance(const GeneratorOptions& options);

/// Uniform integer in [lo, hi] from a 64-bit engine, identical on every
/// platform (no std distribution involved).
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

}  // namespace loadbal
