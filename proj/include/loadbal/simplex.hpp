#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "loadbal/rational.hpp"

namespace loadbal {

struct LinearRow {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Rational rhs;
};

/// Feasibility of { x >= 0 : eq rows = rhs, le rows <= rhs, ge rows >= rhs }.
struct LinearFeasibilityProblem {
  std::size_t num_vars = 0;
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> at_most;
  std::vector<LinearRow> at_least;

  bool satisfied_by(const std::vector<Rational>& x) const;
};

/// Exact phase-one simplex (artificial variables, Bland's rule). Returns a
/// feasible point, or nullopt iff the system is infeasible.
std::optional<std::vector<Rational>> lp_feasible(const LinearFeasibilityProblem& problem);

}  // namespace loadbal
