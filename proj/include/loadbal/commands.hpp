#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loadbal/applications.hpp"
#include "loadbal/instance.hpp"
#include "loadbal/io.hpp"
#include "loadbal/objective.hpp"
#include "loadbal/rational.hpp"

namespace loadbal {

enum ExitCode : int {
  kExitSolved = 0,
  kExitInputError = 1,
  kExitInfeasible = 2,
  kExitResourceLimit = 3,
  kExitInternalError = 4,
};

struct SolveRequest {
  Rational eps = Rational(1, 2);
  std::optional<Rational> delta;    ///< target only; default 1/n
  Objective objective = Objective::Target;
  bool exact = false;
  bool trace = false;
  std::optional<std::uint64_t> seed;  ///< recorded only; the pipeline is deterministic
};

struct SolveResponse {
  int exit_code = kExitSolved;
  SolutionDocument solution;
  Json trace;   ///< null unless requested
};

/// Runs the pipeline for the request's objective. Makespan, Santa Claus and
/// envy use the instance's jobs and machine count and ignore its intervals.
SolveResponse solve_instance(const Instance& inst, const SolveRequest& request);

/// Largest amount by which a load leaves its interval (0 when all fit).
Rational max_violation(const Instance& inst, const std::vector<std::int64_t>& loads);

struct BenchRequest {
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t count = 0;   ///< 0: suite default
  bool timing = false;
};

struct BenchRow {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t m = 0;
  int q = 0;
  Objective objective = Objective::Makespan;
  Rational p_max;
  Rational eps;
  std::optional<Rational> oracle_opt;   ///< target rows: 0 when feasible
  bool oracle_infeasible = false;
  std::optional<Rational> scheme_value; ///< target rows: max violation
  bool scheme_infeasible = false;
  Rational greedy_value;
  Rational certified_bound;
  std::optional<Rational> gap;          ///< scheme vs. OPT, positive = worse
  std::size_t swaps = 0;
  std::size_t dp_states = 0;
  double wall_time = 0;
};

const std::vector<std::string>& bench_suites();
std::vector<BenchRow> run_bench(const BenchRequest& request);
std::string bench_csv(const std::vector<BenchRow>& rows, bool timing);

}  // namespace loadbal
