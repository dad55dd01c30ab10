#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loadbal/dp_solver.hpp"
#include "loadbal/exact_enumeration.hpp"
#include "loadbal/fractional_assignment.hpp"
#include "loadbal/instance.hpp"
#include "loadbal/local_search.hpp"
#include "loadbal/objective.hpp"
#include "loadbal/rational.hpp"

namespace loadbal {

/// Internal class count and relaxation slack derived from a user epsilon.
struct Calibration {
  Rational user_eps;
  int q_int = 1;
  Rational delta;
};

/// makespan / santa: q = ceil(3/eps); envy: q = ceil(6/eps); delta = 1/q.
/// target: q = ceil(1/eps), delta left at 0 (the caller picks it).
Calibration calibrate(const Rational& user_eps, Objective objective);

enum class SolverPath { Auto, Exact, Dp };

const char* to_string(SolverPath p);

struct SolveOptions {
  SolverPath path = SolverPath::Auto;
  DpLimits dp_limits = DpLimits::from_environment();
  ExactLimits exact_limits;
  RoundingOptions rounding;
};

enum class SolveStatus { Solved, Infeasible };

/// Outcome of the full pipeline on one target instance.
struct TargetOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  SolverPath path = SolverPath::Dp;          ///< path actually taken
  std::vector<MachineId> assignment;         ///< job -> machine when solved
  std::vector<std::int64_t> loads;
  Rational band;                             ///< loads within [l - band, u + band]
  std::optional<DpStats> dp_stats;
  std::optional<std::size_t> exact_guesses;
  std::size_t stage1_swaps = 0;
  std::size_t stage2_swaps = 0;
  RepairTrace repair;
  std::vector<SwapRecord> records;

  bool solved() const { return status == SolveStatus::Solved; }
};

/// Relaxation, reconstruction and rounding with eps = 1/q and slack delta.
/// Infeasible is a certificate: the instance has no feasible assignment.
TargetOutcome solve_target(const Instance& inst, Epsilon eps, const Rational& delta,
                           const SolveOptions& options = {});

struct GridPoint {
  Rational lower;
  Rational upper;
};

struct ObjectiveResult {
  Objective objective = Objective::Makespan;
  Calibration calibration;
  std::vector<MachineId> assignment;
  std::vector<std::int64_t> loads;
  std::int64_t value = 0;
  Rational certified_bound;    ///< additive guarantee relative to OPT: eps p_max
  GridPoint grid_point;
  std::size_t grid_points_tried = 0;
  TargetOutcome outcome;       ///< pipeline run at the chosen grid point
  DpStats dp_totals;           ///< summed over every grid point tried
};

struct ApplicationOptions {
  SolveOptions solve;
  /// Keep scanning past the first feasible makespan grid point and assert
  /// that every larger point is feasible too.
  bool check_monotone_grid = false;
};

ObjectiveResult solve_makespan(const std::vector<std::int64_t>& jobs, std::size_t machines,
                               const Rational& user_eps, const ApplicationOptions& options = {});
ObjectiveResult solve_santa(const std::vector<std::int64_t>& jobs, std::size_t machines,
                            const Rational& user_eps, const ApplicationOptions& options = {});
ObjectiveResult solve_envy(const std::vector<std::int64_t>& jobs, std::size_t machines,
                           const Rational& user_eps, const ApplicationOptions& options = {});
ObjectiveResult solve_objective(Objective o, const std::vector<std::int64_t>& jobs, std::size_t machines,
                                const Rational& user_eps, const ApplicationOptions& options = {});

struct GreedyResult {
  std::vector<MachineId> assignment;
  std::vector<std::int64_t> loads;
};

/// List scheduling: each job in input order goes to a least loaded machine
/// (lowest index on ties).
GreedyResult greedy_list_schedule(const std::vector<std::int64_t>& jobs, std::size_t machines);

}  // namespace loadbal
