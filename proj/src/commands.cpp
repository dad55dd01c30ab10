#include "loadbal/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "loadbal/errors.hpp"
#include "loadbal/generator.hpp"
#include "loadbal/oracle.hpp"

namespace loadbal {

Rational max_violation(const Instance& inst, const std::vector<std::int64_t>& loads) {
  Rational worst = 0;
  for (MachineId i = 0; i < inst.num_machines(); ++i) {
    const Rational load = loads[i];
    worst = std::max(worst, Rational(inst.target(i).lower - load));
    worst = std::max(worst, Rational(load - inst.target(i).upper));
  }
  return worst;
}

namespace {

const char* rejection_name(std::size_t r) {
  static const char* names[kRejectionKinds] = {"type-exhausted", "slot-overflow", "class-cap",
                                               "monotonicity", "min-jobs-bound", "machine-bounds"};
  return names[r];
}

Json dp_json(const DpStats& s) {
  Json j = {{"states", s.states}, {"transitions", s.transitions}, {"pruned", s.pruned}};
  j["rejected"] = Json::object();
  for (std::size_t r = 0; r < kRejectionKinds; ++r) j["rejected"][rejection_name(r)] = s.rejected[r];
  return j;
}

Json trace_json(const TargetOutcome& o) {
  Json t = Json::object();
  t["repair"] = Json::array();
  for (const auto& s : o.repair.swaps) {
    t["repair"].push_back({{"class", s.job_class},
                           {"receiver", s.receiver},
                           {"donor", s.donor},
                           {"large_job", s.large_job},
                           {"small_job", s.small_job},
                           {"alpha", rational_to_json(s.alpha)},
                           {"stop", to_string(s.stop)}});
  }
  t["local_search"] = Json::array();
  for (const auto& r : o.records) {
    t["local_search"].push_back({{"stage", static_cast<int>(r.stage)},
                                 {"from_slot", r.from_slot},
                                 {"to_slot", r.to_slot},
                                 {"from_job", r.from_job},
                                 {"to_job", r.to_job},
                                 {"potential_before", r.potential_before},
                                 {"potential_after", r.potential_after},
                                 {"distances_before", r.distances_before},
                                 {"distances_after", r.distances_after}});
  }
  return t;
}

void outcome_meta(Json& meta, const TargetOutcome& o) {
  meta["path"] = to_string(o.path);
  meta["swaps"] = {{"stage1", o.stage1_swaps}, {"stage2", o.stage2_swaps}, {"repair", o.repair.swaps.size()}};
  if (o.dp_stats) meta["dp"] = dp_json(*o.dp_stats);
  if (o.exact_guesses) meta["exact_guesses"] = *o.exact_guesses;
}

}  // namespace

SolveResponse solve_instance(const Instance& inst, const SolveRequest& request) {
  SolveResponse resp;
  Json& meta = resp.solution.meta;
  meta["objective"] = to_string(request.objective);
  meta["eps"] = rational_to_json(request.eps);
  if (request.seed) meta["seed"] = *request.seed;

  if (request.objective == Objective::Target) {
    const Calibration cal = calibrate(request.eps, Objective::Target);
    const Rational delta = request.delta.value_or(
        inst.num_jobs() == 0 ? Rational(0) : Rational(1, static_cast<std::int64_t>(inst.num_jobs())));
    SolveOptions options;
    options.path = request.exact ? SolverPath::Exact : SolverPath::Auto;
    options.rounding.instrument = request.trace;
    TargetOutcome o = solve_target(inst, Epsilon(cal.q_int), delta, options);
    meta["q"] = cal.q_int;
    meta["delta"] = rational_to_json(delta);
    outcome_meta(meta, o);
    if (request.trace) resp.trace = trace_json(o);
    if (!o.solved()) {
      meta["status"] = "infeasible";
      resp.exit_code = kExitInfeasible;
      return resp;
    }
    meta["status"] = "solved";
    resp.solution.assignment = o.assignment;
    for (auto l : o.loads) resp.solution.loads.emplace_back(l);
    resp.solution.objective_value = max_violation(inst, o.loads);
    resp.solution.certified_bound = o.band;
    return resp;
  }

  if (request.delta) throw InputError("--delta applies to the target objective only");
  ApplicationOptions options;
  if (request.exact) options.solve.path = SolverPath::Exact;
  options.solve.rounding.instrument = request.trace;
  const std::vector<std::int64_t> jobs(inst.jobs().begin(), inst.jobs().end());
  ObjectiveResult r = solve_objective(request.objective, jobs, inst.num_machines(), request.eps, options);
  meta["status"] = "solved";
  meta["q"] = r.calibration.q_int;
  meta["delta"] = rational_to_json(r.calibration.delta);
  meta["grid_point"] = {{"lower", rational_to_json(r.grid_point.lower)},
                        {"upper", rational_to_json(r.grid_point.upper)}};
  meta["grid_points_tried"] = r.grid_points_tried;
  meta["calibration"] = "q = ceil(c / eps) with c = " + std::string(request.objective == Objective::Envy ? "6" : "3") +
                        ", delta = 1/q";
  outcome_meta(meta, r.outcome);
  if (r.outcome.dp_stats) meta["dp_total"] = dp_json(r.dp_totals);
  if (request.trace) resp.trace = trace_json(r.outcome);
  resp.solution.assignment = r.assignment;
  for (auto l : r.loads) resp.solution.loads.emplace_back(l);
  resp.solution.objective_value = Rational(r.value);
  resp.solution.certified_bound = r.certified_bound;
  return resp;
}

const std::vector<std::string>& bench_suites() {
  static const std::vector<std::string> suites = {"tiny-makespan", "tiny-santa", "tiny-envy", "tiny-target",
                                                  "planted-envy"};
  return suites;
}

namespace {

std::string row_id(const std::string& suite, std::size_t idx) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%03zu", idx);
  return suite + "-" + buf;
}

BenchRow objective_row(Objective o, const std::vector<std::int64_t>& jobs, std::size_t m, const Rational& eps) {
  BenchRow row;
  row.objective = o;
  row.n = jobs.size();
  row.m = m;
  row.eps = eps;
  row.p_max = *std::max_element(jobs.begin(), jobs.end());
  const ObjectiveResult r = solve_objective(o, jobs, m, eps);
  row.q = r.calibration.q_int;
  row.scheme_value = Rational(r.value);
  row.certified_bound = r.certified_bound;
  row.swaps = r.outcome.stage1_swaps + r.outcome.stage2_swaps;
  row.dp_states = r.dp_totals.states;
  const GreedyResult g = greedy_list_schedule(jobs, m);
  row.greedy_value = objective_value(o, g.loads);
  if (jobs.size() <= kOracleMaxJobs) {
    const std::int64_t opt = brute_force_opt(jobs, m, o);
    row.oracle_opt = Rational(opt);
    row.gap = o == Objective::Santa ? Rational(opt - r.value) : Rational(r.value - opt);
  }
  return row;
}

BenchRow target_row(const Instance& inst, const Rational& eps) {
  BenchRow row;
  row.objective = Objective::Target;
  row.n = inst.num_jobs();
  row.m = inst.num_machines();
  row.eps = eps;
  row.p_max = inst.p_max();
  const Calibration cal = calibrate(eps, Objective::Target);
  row.q = cal.q_int;
  const Rational delta(1, static_cast<std::int64_t>(inst.num_jobs()));
  SolveOptions options;
  options.path = SolverPath::Dp;
  const TargetOutcome o = solve_target(inst, Epsilon(cal.q_int), delta, options);
  row.certified_bound = (Rational(1, cal.q_int) + delta) * inst.p_max();
  if (o.dp_stats) row.dp_states = o.dp_stats->states;
  row.swaps = o.stage1_swaps + o.stage2_swaps;
  if (o.solved()) {
    row.scheme_value = max_violation(inst, o.loads);
  } else {
    row.scheme_infeasible = true;
  }
  const std::vector<std::int64_t> jobs(inst.jobs().begin(), inst.jobs().end());
  row.greedy_value = max_violation(inst, greedy_list_schedule(jobs, inst.num_machines()).loads);
  if (inst.num_jobs() <= kOracleMaxJobs) {
    if (brute_force_target(inst)) {
      row.oracle_opt = Rational(0);
      if (row.scheme_value) row.gap = *row.scheme_value;
    } else {
      row.oracle_infeasible = true;
    }
  }
  return row;
}

Instance tightened(const Instance& inst, std::mt19937_64& rng) {
  const IntervalCatalog catalog = interval_catalog(inst);
  std::vector<TargetInterval> per_type;
  for (const auto& t : catalog.intervals) {
    const Rational lower = t.lower + uniform_int(rng, 0, inst.p_max());
    const Rational upper = std::max(lower, Rational(t.upper - uniform_int(rng, 0, inst.p_max())));
    per_type.push_back({lower, upper});
  }
  std::vector<TargetInterval> machines;
  for (MachineId i = 0; i < inst.num_machines(); ++i) machines.push_back(per_type[catalog.type_of[i]]);
  return Instance(std::vector<std::int64_t>(inst.jobs().begin(), inst.jobs().end()), machines);
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchRequest& request) {
  const auto& suites = bench_suites();
  if (std::find(suites.begin(), suites.end(), request.suite) == suites.end()) {
    throw InputError("unknown suite '" + request.suite + "'");
  }
  const std::size_t count = request.count == 0 ? 20 : request.count;
  std::mt19937_64 master(request.seed);
  std::vector<BenchRow> rows;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::mt19937_64 rng(master());
    const auto start = std::chrono::steady_clock::now();
    BenchRow row;
    if (request.suite == "planted-envy") {
      GeneratorOptions g;
      g.m = static_cast<std::size_t>(uniform_int(rng, 2, 3));
      g.n = g.m * static_cast<std::size_t>(uniform_int(rng, 2, 4));
      g.pmax = uniform_int(rng, 1, 3);
      g.style = Objective::Envy;
      g.planted_balance = true;
      g.seed = rng();
      const Instance inst = generate_instance(g);
      row = objective_row(Objective::Envy, {inst.jobs().begin(), inst.jobs().end()}, g.m, Rational(1, 4));
    } else if (request.suite == "tiny-target") {
      GeneratorOptions g;
      g.n = static_cast<std::size_t>(uniform_int(rng, 4, 10));
      g.m = static_cast<std::size_t>(uniform_int(rng, 2, 3));
      g.pmax = 20;
      g.k_intervals = static_cast<std::size_t>(uniform_int(rng, 1, 2));
      g.seed = rng();
      Instance inst = generate_instance(g);
      if (idx % 2 == 1) inst = tightened(inst, rng);
      row = target_row(inst, Rational(1, 2));
    } else {
      const Objective o = request.suite == "tiny-makespan" ? Objective::Makespan
                          : request.suite == "tiny-santa"  ? Objective::Santa
                                                           : Objective::Envy;
      GeneratorOptions g;
      g.n = static_cast<std::size_t>(uniform_int(rng, 4, 10));
      g.m = static_cast<std::size_t>(uniform_int(rng, 2, 3));
      g.pmax = 20;
      g.style = o;
      g.seed = rng();
      const Instance inst = generate_instance(g);
      row = objective_row(o, {inst.jobs().begin(), inst.jobs().end()}, g.m, Rational(1, 2));
    }
    row.instance_id = row_id(request.suite, idx);
    if (request.timing) {
      row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) { return a.instance_id < b.instance_id; });
  return rows;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const std::optional<Rational>& v, bool infeasible) {
  if (infeasible) return "infeasible";
  return v ? to_string(*v) : "";
}

}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows, bool timing) {
  std::ostringstream os;
  os << "instance_id,n,m,q,objective,p_max,eps,oracle_opt,scheme_value,greedy_value,certified_bound,gap,swaps,"
        "dp_states,wall_time\n";
  for (const auto& r : rows) {
    std::string wall;
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", r.wall_time);
      wall = buf;
    }
    const std::vector<std::string> cells = {r.instance_id,
                                            std::to_string(r.n),
                                            std::to_string(r.m),
                                            std::to_string(r.q),
                                            to_string(r.objective),
                                            to_string(r.p_max),
                                            to_string(r.eps),
                                            cell(r.oracle_opt, r.oracle_infeasible),
                                            cell(r.scheme_value, r.scheme_infeasible),
                                            to_string(r.greedy_value),
                                            to_string(r.certified_bound),
                                            cell(r.gap, false),
                                            std::to_string(r.swaps),
                                            std::to_string(r.dp_states),
                                            wall};
    for (std::size_t c = 0; c < cells.size(); ++c) os << (c ? "," : "") << csv_cell(cells[c]);
    os << "\n";
  }
  return os.str();
}

}  // namespace loadbal
