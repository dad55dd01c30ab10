#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/simplex.hpp"
#include "loadbal/slot_relaxation.hpp"

namespace loadbal {

struct ExactLimits {
  std::size_t max_jobs = 10;
  std::size_t max_machines = 4;
  int max_classes = 2;
  std::size_t max_types = 2;
  /// Skip profiles where two machines of one interval type have equal y
  /// parity but different y. Always complete; disabling it is for sampling.
  bool parity_pruning = true;

  bool admits(const Instance& inst, const JobClasses& classes) const;
};

/// Slot vectors chosen for the machines of one interval type, as a multiset.
struct TypeGuess {
  /// per interval type: (y vector, number of machines carrying it)
  std::vector<std::vector<std::pair<std::vector<std::int64_t>, std::size_t>>> per_type;

  /// Expands to a machine-indexed profile: machines of each type, in index
  /// order, take the vectors in the order listed.
  SlotProfile to_profile(const IntervalCatalog& catalog, int classes) const;
};

/// Visits every slot profile up to permutation of machines with identical
/// intervals; stops early when visit returns true. Returns the number of
/// guesses visited.
std::size_t enumerate_type_guesses(const JobClasses& classes, const IntervalCatalog& catalog,
                                   const ExactLimits& limits,
                                   const std::function<bool(const TypeGuess&)>& visit);

/// LP over x for fixed y: n coverage rows, m q slot rows and 2m load rows.
/// Variable index of x(i, j) is i * n + j.
LinearFeasibilityProblem build_slot_lp(const Instance& inst, const JobClasses& classes,
                                       const SlotProfile& y);

struct ExactResult {
  std::optional<std::pair<FractionalAssignment, SlotProfile>> solution;  ///< nullopt: infeasible
  std::size_t guesses = 0;
  std::size_t lp_solves = 0;

  bool feasible() const { return solution.has_value(); }
};

/// Exact slot relaxation: enumerate profiles, decide each residual LP.
/// Throws ResourceLimitError outside the limits.
ExactResult solve_slot_milp_exact(const Instance& inst, const JobClasses& classes,
                                  const ExactLimits& limits = {});

/// Like solve_slot_milp_exact but reports every feasible profile's witness;
/// stops when visit returns true.
void for_each_feasible_slot_solution(
    const Instance& inst, const JobClasses& classes, const ExactLimits& limits,
    const std::function<bool(const FractionalAssignment&, const SlotProfile&)>& visit);

}  // namespace loadbal
