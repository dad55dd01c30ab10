#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/objective.hpp"

namespace loadbal {

inline constexpr std::size_t kOracleMaxJobs = 14;

struct OracleOptions {
  std::size_t max_jobs = kOracleMaxJobs;
  /// Skip machines equivalent to an earlier one (same interval, same load).
  bool symmetry_pruning = true;
};

/// Exhaustive search for an assignment with every load in its interval.
/// Returns job -> machine, or nullopt when none exists. Throws
/// ResourceLimitError when n exceeds the limit.
std::optional<std::vector<MachineId>> brute_force_target(const Instance& inst, const OracleOptions& options = {});

/// Exact optimum of a makespan, Santa Claus or envy instance on m identical
/// machines, by search over sorted load vectors.
std::int64_t brute_force_opt(const std::vector<std::int64_t>& jobs, std::size_t machines, Objective objective,
                             const OracleOptions& options = {});

}  // namespace loadbal
