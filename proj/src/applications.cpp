#include "loadbal/applications.hpp"

#include <algorithm>
#include <tuple>

#include "loadbal/errors.hpp"
#include "loadbal/fractional_assignment.hpp"

namespace loadbal {

Calibration calibrate(const Rational& user_eps, Objective objective) {
  if (user_eps <= 0 || user_eps > 1) throw InputError("eps must lie in (0, 1], got " + to_string(user_eps));
  int factor = 1;
  if (objective == Objective::Makespan || objective == Objective::Santa) factor = 3;
  if (objective == Objective::Envy) factor = 6;
  Calibration c;
  c.user_eps = user_eps;
  c.q_int = static_cast<int>(to_int64(ceil_div(Rational(factor) / user_eps)));
  c.delta = objective == Objective::Target ? Rational(0) : Rational(1, c.q_int);
  return c;
}

const char* to_string(SolverPath p) {
  switch (p) {
    case SolverPath::Auto: return "auto";
    case SolverPath::Exact: return "exact";
    case SolverPath::Dp: return "dp";
  }
  return "?";
}

namespace {

void accumulate(DpStats& into, const DpStats& s) {
  into.states += s.states;
  into.transitions += s.transitions;
  into.pruned += s.pruned;
  for (std::size_t r = 0; r < kRejectionKinds; ++r) into.rejected[r] += s.rejected[r];
}

}  // namespace

TargetOutcome solve_target(const Instance& inst, Epsilon eps, const Rational& delta, const SolveOptions& options) {
  if (delta < 0) throw InputError("delta must be non-negative");
  TargetOutcome out;
  if (inst.num_jobs() == 0) {
    out.path = SolverPath::Exact;
    out.loads.assign(inst.num_machines(), 0);
    out.band = 0;
    const bool ok = std::all_of(inst.machines().begin(), inst.machines().end(),
                                [](const TargetInterval& t) { return t.lower == 0; });
    out.status = ok ? SolveStatus::Solved : SolveStatus::Infeasible;
    return out;
  }
  const JobClasses classes(inst, eps);
  bool exact = options.path == SolverPath::Exact;
  if (options.path == SolverPath::Auto) exact = options.exact_limits.admits(inst, classes);
  out.path = exact ? SolverPath::Exact : SolverPath::Dp;

  FractionalAssignment x;
  SlotProfile y;
  Rational slack = 0;
  if (exact) {
    ExactResult r = solve_slot_milp_exact(inst, classes, options.exact_limits);
    out.exact_guesses = r.guesses;
    if (!r.feasible()) return out;
    x = std::move(r.solution->first);
    y = std::move(r.solution->second);
  } else {
    if (delta <= 0) throw InputError("delta must be positive for the dynamic program");
    DpResult r = solve_slot_milp_dp(inst, classes, delta, options.dp_limits);
    out.dp_stats = r.stats;
    if (!r.feasible()) return out;
    const SlotMilpSolution& s = *r.solution;
    FractionalResult f = build_fractional(inst, classes, s.order, s.y, s.z, delta);
    out.repair = std::move(f.trace);
    x = std::move(f.x);
    y = s.y;
    slack = delta;
  }

  RoundingResult rounded = round_solution(inst, classes, x, y, eps, slack, options.rounding);
  out.status = SolveStatus::Solved;
  out.assignment = rounded.assignment.assignment();
  out.loads = rounded.assignment.loads();
  out.stage1_swaps = rounded.stage1_swaps;
  out.stage2_swaps = rounded.stage2_swaps;
  out.records = std::move(rounded.records);
  out.band = (eps.value() + slack) * inst.p_max();
  for (MachineId i = 0; i < inst.num_machines(); ++i) {
    const Rational load = out.loads[i];
    if (load < inst.target(i).lower - out.band || load > inst.target(i).upper + out.band) {
      throw InternalError("machine " + std::to_string(i) + " outside the guaranteed band");
    }
  }
  return out;
}

namespace {

struct Scan {
  Objective objective;
  const std::vector<std::int64_t>& jobs;
  std::size_t m;
  Calibration cal;
  const ApplicationOptions& options;
  ObjectiveResult result;
  bool found = false;

  // Runs the pipeline at one grid point; returns true when solved.
  bool attempt(const Rational& lower, const Rational& upper) {
    const Instance inst(jobs, std::vector<TargetInterval>(m, TargetInterval{lower, upper}));
    ++result.grid_points_tried;
    TargetOutcome o = solve_target(inst, Epsilon(cal.q_int), cal.delta, options.solve);
    if (o.dp_stats) accumulate(result.dp_totals, *o.dp_stats);
    if (!o.solved()) return false;
    if (!found) {
      found = true;
      result.grid_point = {lower, upper};
      result.assignment = o.assignment;
      result.loads = o.loads;
      result.outcome = std::move(o);
    }
    return true;
  }

  ObjectiveResult finish(std::int64_t p_max) {
    if (!found) throw InternalError(std::string("no feasible grid point for ") + to_string(objective));
    result.objective = objective;
    result.calibration = cal;
    result.value = objective_value(objective, result.loads);
    result.certified_bound = cal.user_eps * p_max;
    return std::move(result);
  }
};

void check_inputs(const std::vector<std::int64_t>& jobs, std::size_t machines) {
  if (machines == 0) throw InputError("machines: at least one machine is required");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j] < 1) throw InputError("job " + std::to_string(j) + ": processing time must be >= 1");
  }
}

std::optional<ObjectiveResult> trivial(Objective o, const std::vector<std::int64_t>& jobs, std::size_t m,
                                       const Rational& user_eps) {
  if (!jobs.empty()) return std::nullopt;
  ObjectiveResult r;
  r.objective = o;
  r.calibration = calibrate(user_eps, o);
  r.loads.assign(m, 0);
  r.outcome.status = SolveStatus::Solved;
  r.outcome.loads = r.loads;
  r.certified_bound = 0;
  return r;
}

struct GridFrame {
  Rational step;
  Rational average;
  std::int64_t p_max;
  std::int64_t total;

  std::int64_t floor_index(const Rational& v) const { return to_int64(floor_div(v / step)); }
  std::int64_t ceil_index(const Rational& v) const { return to_int64(ceil_div(v / step)); }
  Rational at(std::int64_t t) const { return step * t; }
};

GridFrame frame(const std::vector<std::int64_t>& jobs, std::size_t m, const Calibration& cal) {
  GridFrame f;
  f.p_max = *std::max_element(jobs.begin(), jobs.end());
  f.total = 0;
  for (auto p : jobs) f.total += p;
  f.step = Rational(f.p_max, cal.q_int);
  f.average = Rational(f.total, static_cast<std::int64_t>(m));
  return f;
}

}  // namespace

ObjectiveResult solve_makespan(const std::vector<std::int64_t>& jobs, std::size_t machines,
                               const Rational& user_eps, const ApplicationOptions& options) {
  check_inputs(jobs, machines);
  if (auto t = trivial(Objective::Makespan, jobs, machines, user_eps)) return *t;
  Scan scan{Objective::Makespan, jobs, machines, calibrate(user_eps, Objective::Makespan), options, {}};
  const GridFrame f = frame(jobs, machines, scan.cal);
  const std::int64_t first = f.floor_index(f.average);
  const std::int64_t last = f.ceil_index(f.average + f.p_max);
  for (std::int64_t t = first; t <= last; ++t) {
    const bool had = scan.found;
    const bool ok = scan.attempt(0, f.at(t));
    if (had && !ok) throw InternalError("makespan grid not monotone at u = " + to_string(f.at(t)));
    if (ok && !options.check_monotone_grid) break;
  }
  return scan.finish(f.p_max);
}

ObjectiveResult solve_santa(const std::vector<std::int64_t>& jobs, std::size_t machines,
                            const Rational& user_eps, const ApplicationOptions& options) {
  check_inputs(jobs, machines);
  if (auto t = trivial(Objective::Santa, jobs, machines, user_eps)) return *t;
  Scan scan{Objective::Santa, jobs, machines, calibrate(user_eps, Objective::Santa), options, {}};
  const GridFrame f = frame(jobs, machines, scan.cal);
  const std::int64_t first = f.ceil_index(f.average);
  const std::int64_t last = std::max<std::int64_t>(0, f.floor_index(f.average - f.p_max));
  for (std::int64_t t = first; t >= last && !scan.found; --t) scan.attempt(f.at(t), f.total);
  if (!scan.found) scan.attempt(0, f.total);
  return scan.finish(f.p_max);
}

ObjectiveResult solve_envy(const std::vector<std::int64_t>& jobs, std::size_t machines,
                           const Rational& user_eps, const ApplicationOptions& options) {
  check_inputs(jobs, machines);
  if (auto t = trivial(Objective::Envy, jobs, machines, user_eps)) return *t;
  Scan scan{Objective::Envy, jobs, machines, calibrate(user_eps, Objective::Envy), options, {}};
  const GridFrame f = frame(jobs, machines, scan.cal);
  const std::int64_t lo_first = std::max<std::int64_t>(0, f.floor_index(f.average - f.p_max));
  const std::int64_t lo_last = f.ceil_index(f.average);
  const std::int64_t up_first = f.floor_index(f.average);
  const std::int64_t up_last = f.ceil_index(f.average + f.p_max);
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> pairs;   // (width, u, l)
  for (std::int64_t l = lo_first; l <= lo_last; ++l) {
    for (std::int64_t u = std::max(l, up_first); u <= up_last; ++u) pairs.emplace_back(u - l, u, l);
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [w, u, l] : pairs) {
    if (scan.attempt(f.at(l), f.at(u))) break;
  }
  if (!scan.found) scan.attempt(0, f.total);
  return scan.finish(f.p_max);
}

ObjectiveResult solve_objective(Objective o, const std::vector<std::int64_t>& jobs, std::size_t machines,
                                const Rational& user_eps, const ApplicationOptions& options) {
  switch (o) {
    case Objective::Makespan: return solve_makespan(jobs, machines, user_eps, options);
    case Objective::Santa: return solve_santa(jobs, machines, user_eps, options);
    case Objective::Envy: return solve_envy(jobs, machines, user_eps, options);
    case Objective::Target: break;
  }
  throw InputError("solve_objective needs makespan, santa or envy");
}

GreedyResult greedy_list_schedule(const std::vector<std::int64_t>& jobs, std::size_t machines) {
  check_inputs(jobs, machines);
  GreedyResult r;
  r.loads.assign(machines, 0);
  for (auto p : jobs) {
    const auto it = std::min_element(r.loads.begin(), r.loads.end());
    r.assignment.push_back(static_cast<MachineId>(it - r.loads.begin()));
    *it += p;
  }
  return r;
}

}  // namespace loadbal
