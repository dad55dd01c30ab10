// Acceptance runner: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "loadbal/applications.hpp"
#include "loadbal/commands.hpp"
#include "loadbal/dp_solver.hpp"
#include "loadbal/exact_enumeration.hpp"
#include "loadbal/fractional_assignment.hpp"
#include "loadbal/generator.hpp"
#include "loadbal/io.hpp"
#include "loadbal/local_search.hpp"
#include "loadbal/oracle.hpp"
#include "loadbal/verify.hpp"

using namespace loadbal;
namespace fs = std::filesystem;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool pass() const { return failures == 0 && checks > 0; }
};

std::string str(const Rational& r) { return to_string(r); }

// Criteria 5, 7 and 8 are checked on every pipeline run through this hook.
Tally c5, c7, c8;

struct PipelineStats {
  std::size_t dp_runs = 0;
  std::size_t rounding_runs = 0;
  std::size_t records = 0;
};
PipelineStats pipeline;

// Instrumented rounding of (x, y); checks the local-search invariants on every
// swap and returns the final loads.
std::vector<std::int64_t> check_rounding(const Instance& inst, const JobClasses& c, const FractionalAssignment& x,
                                         const SlotProfile& y, int q, const Rational& delta, const std::string& tag) {
  const std::size_t n = inst.num_jobs();
  const std::size_t m = inst.num_machines();
  RoundingOptions opt;
  opt.instrument = true;
  auto r = round_solution(inst, c, x, y, Epsilon(q), delta, opt);
  const std::size_t cap = n * n * n;
  c8.expect(r.stage1_swaps <= cap && r.stage2_swaps <= cap, tag + ": swaps above n^3");
  for (const auto& rec : r.records) {
    bool mono = true;
    for (std::size_t v = 0; v < rec.distances_before.size(); ++v) {
      mono &= rec.distances_after[v] >= rec.distances_before[v];
    }
    c8.expect(mono, tag + ": distance decreased after a swap");
    c8.expect(rec.potential_after > rec.potential_before, tag + ": potential did not increase");
  }
  bool counts = r.assignment.consistent(c);
  for (MachineId i = 0; i < m; ++i) {
    for (int k = 0; k < q; ++k) counts &= r.assignment.count(i, k) == static_cast<std::size_t>(y.at(i, k));
  }
  c8.expect(counts, tag + ": per-class slot counts changed");
  ++pipeline.rounding_runs;
  pipeline.records += r.records.size();
  return r.assignment.loads();
}

// Replays the relaxation, reconstruction and rounding of solve_target on
// (inst, q, delta) with full instrumentation and checks every intermediate
// guarantee. Returns the rounded loads, or nullopt when the DP is infeasible.
std::optional<std::vector<std::int64_t>> instrumented_pipeline(const Instance& inst, int q, const Rational& delta,
                                                               const std::string& tag) {
  JobClasses c(inst, Epsilon(q));
  auto dp = solve_slot_milp_dp(inst, c, delta);
  if (!dp.feasible()) return std::nullopt;
  ++pipeline.dp_runs;
  const auto& s = *dp.solution;
  const std::size_t n = inst.num_jobs();
  const std::size_t m = inst.num_machines();

  c5.expect(check_ordering_conditions(inst, c, s.order, s.y, s.z, delta).ok(), tag + ": ordering conditions");

  auto f = build_fractional(inst, c, s.order, s.y, s.z, delta);
  const Rational slack = delta * inst.p_max() / q;
  for (MachineId i = 0; i < m; ++i) {
    for (int k = 0; k < q; ++k) {
      const Rational target = s.z.at(i, k) * s.y.at(i, k);
      const Rational vol = class_volume(c, f.x, i, k);
      c7.expect(vol <= target, tag + ": class volume above y z on machine " + std::to_string(i));
      c7.expect(vol >= target - slack, tag + ": class volume below y z - slack on machine " + std::to_string(i));
      Rational count = 0;
      for (JobId j : c.members(k)) count += f.x.get(i, j);
      c7.expect(count == s.y.at(i, k), tag + ": slot count on machine " + std::to_string(i));
    }
    c7.expect(f.trace.swaps_for(i) <= n * n, tag + ": repair swaps above n^2");
  }
  for (JobId j = 0; j < n; ++j) {
    Rational col = 0;
    for (MachineId i = 0; i < m; ++i) col += f.x.get(i, j);
    c7.expect(col == 1, tag + ": column sum of job " + std::to_string(j));
  }

  return check_rounding(inst, c, f.x, s.y, q, delta, tag);
}

// Uniformly spread witnesses with intervals pinned to their fractional
// loads: the sorted initial fill is far from them, so rounding has to swap.
void rounding_stress(std::size_t count) {
  std::mt19937_64 rng(8008);
  for (std::size_t t = 0; t < count; ++t) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 6, 14));
    const auto m = static_cast<std::size_t>(uniform_int(rng, 2, 4));
    const int q = static_cast<int>(uniform_int(rng, 1, 3));
    const auto jobs = testutil::random_jobs(rng, n, 20);
    JobClasses c(Instance(jobs, std::vector<TargetInterval>(m, TargetInterval{0, 0})), Epsilon(q));
    SlotProfile y(m, q);
    for (int k = 0; k < q; ++k) {
      for (std::size_t r = 0; r < c.size(k); ++r) ++y.at(static_cast<MachineId>(uniform_int(rng, 0, m - 1)), k);
    }
    FractionalAssignment x(m, n);
    std::vector<Rational> loads(m, Rational(0));
    for (int k = 0; k < q; ++k) {
      if (c.size(k) == 0) continue;
      const std::int64_t size = static_cast<std::int64_t>(c.size(k));
      for (MachineId i = 0; i < m; ++i) {
        for (JobId j : c.members(k)) {
          x.set(i, j, Rational(y.at(i, k), size));
          loads[i] += Rational(y.at(i, k), size) * jobs[j];
        }
      }
    }
    std::vector<TargetInterval> intervals;
    for (const auto& l : loads) intervals.push_back({l, l});
    const Instance inst(jobs, intervals);
    const std::string tag = "stress#" + std::to_string(t);
    const auto final_loads = check_rounding(inst, c, x, y, q, 0, tag);
    const Rational band = Rational(inst.p_max(), q);
    for (MachineId i = 0; i < m; ++i) {
      c8.expect(Rational(final_loads[i]) >= loads[i] - band && Rational(final_loads[i]) <= loads[i] + band,
                tag + ": final load outside the band");
    }
  }
}

Instance grid_instance(const std::vector<std::int64_t>& jobs, std::size_t m, const GridPoint& g) {
  return Instance(jobs, std::vector<TargetInterval>(m, TargetInterval{g.lower, g.upper}));
}

// Lines are printed in criterion order once everything has run.
std::map<int, std::string> lines;
bool all_pass = true;

void report(int id, const Tally& t, const std::string& detail) {
  std::string line = "criterion " + std::to_string(id) + ": " + (t.pass() ? "PASS " : "FAIL ") + detail;
  if (!t.pass()) {
    line += " [" + std::to_string(t.failures) + "/" + std::to_string(t.checks) + " failed; first: " +
            (t.first_failure.empty() ? "no checks ran" : t.first_failure) + "]";
  }
  all_pass &= t.pass();
  lines[id] = line;
  std::fprintf(stderr, "%s\n", line.c_str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

struct ObjectiveCase {
  std::vector<std::int64_t> jobs;
  std::size_t m = 0;
};

std::vector<ObjectiveCase> random_suite(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<ObjectiveCase> out;
  for (std::size_t t = 0; t < count; ++t) {
    ObjectiveCase c;
    const auto n = static_cast<std::size_t>(uniform_int(rng, 4, 10));
    c.m = static_cast<std::size_t>(uniform_int(rng, 2, 3));
    c.jobs = testutil::random_jobs(rng, n, 20);
    out.push_back(std::move(c));
  }
  return out;
}

// Runs one objective on a case, checks the additive guarantee and replays the
// chosen grid point through the instrumented pipeline.
void objective_case(Objective o, const ObjectiveCase& c, const Rational& eps, const std::string& tag, Tally& t,
                    std::int64_t* value_out = nullptr) {
  ApplicationOptions opt;
  opt.solve.rounding.instrument = true;
  const auto r = solve_objective(o, c.jobs, c.m, eps, opt);
  const std::int64_t opt_value = brute_force_opt(c.jobs, c.m, o);
  const Rational bound = eps * *std::max_element(c.jobs.begin(), c.jobs.end());
  t.expect(r.certified_bound == bound, tag + ": certified bound " + str(r.certified_bound));
  t.expect(r.value == objective_value(o, r.loads), tag + ": reported value differs from loads");
  if (o == Objective::Santa) {
    t.expect(Rational(r.value) >= Rational(opt_value) - bound,
             tag + ": value " + std::to_string(r.value) + " < OPT " + std::to_string(opt_value) + " - " + str(bound));
  } else {
    t.expect(Rational(r.value) <= Rational(opt_value) + bound,
             tag + ": value " + std::to_string(r.value) + " > OPT " + std::to_string(opt_value) + " + " + str(bound));
  }
  for (const auto& rec : r.outcome.records) {
    c8.expect(rec.potential_after > rec.potential_before, tag + ": potential (pipeline records)");
  }
  auto replay = instrumented_pipeline(grid_instance(c.jobs, c.m, r.grid_point), r.calibration.q_int,
                                      r.calibration.delta, tag);
  t.expect(replay && *replay == r.loads, tag + ": replay of the chosen grid point differs");
  if (value_out) *value_out = r.value;
}

void objective_criterion(int id, Objective o, const std::vector<ObjectiveCase>& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    objective_case(o, suite[i], Rational(1, 2), std::string(to_string(o)) + "#" + std::to_string(i), t);
  }
  report(id, t, std::to_string(suite.size()) + " instances, eps=1/2, " + fmt_seconds(seconds_since(t0)));
}

void criterion_envy(const std::vector<ObjectiveCase>& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    objective_case(Objective::Envy, suite[i], Rational(1, 2), "envy#" + std::to_string(i), t);
  }
  std::mt19937_64 rng(3003);
  std::size_t zero = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    GeneratorOptions g;
    g.m = static_cast<std::size_t>(uniform_int(rng, 2, 3));
    g.n = g.m * static_cast<std::size_t>(uniform_int(rng, 2, 4));
    g.pmax = uniform_int(rng, 1, 3);
    g.planted_balance = true;
    g.style = Objective::Envy;
    g.seed = rng();
    const Instance inst = generate_instance(g);
    ObjectiveCase c{std::vector<std::int64_t>(inst.jobs().begin(), inst.jobs().end()), inst.num_machines()};
    std::int64_t value = -1;
    objective_case(Objective::Envy, c, Rational(1, 4), "planted#" + std::to_string(i), t, &value);
    t.expect(value == 0, "planted#" + std::to_string(i) + ": envy " + std::to_string(value) + " != 0");
    zero += value == 0;
  }
  report(3, t,
         std::to_string(suite.size()) + " random (eps=1/2) + 50 planted (eps=1/4, envy 0 on " + std::to_string(zero) +
             "/50), " + fmt_seconds(seconds_since(t0)));
}

void criterion_band() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(4004);
  std::size_t solved = 0, infeasible = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    Instance inst = [&] {
      if (i % 2 == 0) {
        GeneratorOptions g;
        g.n = static_cast<std::size_t>(uniform_int(rng, 1, 10));
        g.m = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        g.k_intervals = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(std::min<std::size_t>(2, g.m))));
        g.pmax = 20;
        g.seed = rng();
        return generate_instance(g);
      }
      return testutil::random_target(rng, 10, 3, 20);
    }();
    const std::string tag = "target#" + std::to_string(i);
    const Rational delta(1, static_cast<std::int64_t>(inst.num_jobs()));
    SolveOptions opt;
    opt.path = SolverPath::Dp;
    opt.rounding.instrument = true;
    const auto r = solve_target(inst, Epsilon(2), delta, opt);
    if (r.solved()) {
      ++solved;
      std::vector<Rational> loads(r.loads.begin(), r.loads.end());
      std::vector<std::size_t> a(r.assignment.begin(), r.assignment.end());
      const auto v = verify_assignment(inst, a, loads, Rational(1, 2), delta);
      t.expect(v.pass(), tag + ": verify failed" + (v.errors.empty() ? "" : ": " + v.errors.front()));
      t.expect(v.band == (Rational(1, 2) + delta) * inst.p_max(), tag + ": band");
      auto replay = instrumented_pipeline(inst, 2, delta, tag);
      t.expect(replay && *replay == r.loads, tag + ": replay differs");
    } else {
      ++infeasible;
      t.expect(!brute_force_target(inst).has_value(), tag + ": infeasible verdict but an assignment exists");
    }
  }
  report(4, t,
         "200 instances (" + std::to_string(solved) + " solved, " + std::to_string(infeasible) +
             " infeasible confirmed), q=2, delta=1/n, " + fmt_seconds(seconds_since(t0)));
}

void criterion_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(6006);
  std::size_t exact_feasible = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    Instance inst = [&] {
      if (i % 2 == 0) {
        GeneratorOptions g;
        g.n = static_cast<std::size_t>(uniform_int(rng, 1, 8));
        g.m = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        g.k_intervals = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(std::min<std::size_t>(2, g.m))));
        g.pmax = 10;
        g.seed = rng();
        return generate_instance(g);
      }
      return testutil::random_target(rng, 8, 3, 10);
    }();
    const int q = static_cast<int>(uniform_int(rng, 1, 2));
    JobClasses c(inst, Epsilon(q));
    const auto ex = solve_slot_milp_exact(inst, c);
    const bool exact = ex.feasible();
    if (exact) check_rounding(inst, c, ex.solution->first, ex.solution->second, q, 0, "tiny-exact#" + std::to_string(i));
    const Rational delta(1, static_cast<std::int64_t>(inst.num_jobs()));
    const bool dp = solve_slot_milp_dp(inst, c, delta).feasible();
    exact_feasible += exact;
    t.expect(!exact || dp, "tiny#" + std::to_string(i) + ": exact feasible but dp infeasible");
    if (dp) instrumented_pipeline(inst, q, delta, "tiny#" + std::to_string(i));
  }
  report(6, t,
         "50 instances, " + std::to_string(exact_feasible) + " exact-feasible, all matched by dp, " +
             fmt_seconds(seconds_since(t0)));
}

bool parity_matched(const SlotProfile& y, MachineId a, MachineId b) {
  for (int k = 0; k < y.num_classes(); ++k) {
    if ((y.at(a, k) - y.at(b, k)) % 2 != 0) return false;
  }
  return true;
}

void criterion_averaging() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(9009);
  ExactLimits limits;
  limits.parity_pruning = false;
  std::size_t samples = 0, strict = 0, attempts = 0;
  while (samples < 100 && attempts < 5000) {
    ++attempts;
    Instance inst = testutil::random_target(rng, 8, 4, 10);
    if (inst.num_machines() < 2) continue;
    const int q = static_cast<int>(uniform_int(rng, 1, 2));
    JobClasses c(inst, Epsilon(q));
    // pick one feasible solution per instance that has an eligible pair,
    // preferring one whose pair differs so the strict case is exercised
    const std::size_t skip = static_cast<std::size_t>(uniform_int(rng, 0, 3));
    std::size_t seen = 0;
    for_each_feasible_slot_solution(inst, c, limits, [&](const FractionalAssignment& x, const SlotProfile& y) {
      for (MachineId a = 0; a < inst.num_machines(); ++a) {
        for (MachineId b = a + 1; b < inst.num_machines(); ++b) {
          if (!(inst.target(a) == inst.target(b)) || !parity_matched(y, a, b)) continue;
          if (seen++ < skip) return false;
          const std::string tag = "sample#" + std::to_string(samples);
          auto [x2, y2] = average_pair(inst, x, y, a, b);
          t.expect(check_slot_feasible(inst, c, x2, y2, 0).feasible(), tag + ": averaged solution infeasible");
          bool differ = false;
          for (int k = 0; k < q; ++k) differ |= y.at(a, k) != y.at(b, k);
          const int sign = pair_squared_potential_change(y, y2, a, b);
          t.expect(pair_potential_change(y, y2, a, b) <= 0, tag + ": sum of norms increased");
          if (differ) {
            ++strict;
            t.expect(sign < 0, tag + ": potential did not strictly decrease");
          } else {
            t.expect(sign == 0, tag + ": potential changed for identical rows");
          }
          ++samples;
          return true;
        }
      }
      return false;
    });
  }
  t.expect(samples == 100, "only " + std::to_string(samples) + " samples found");
  report(9, t,
         std::to_string(samples) + " samples (" + std::to_string(strict) + " with differing rows), " +
             fmt_seconds(seconds_since(t0)));
}

void criterion_greedy() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::size_t rows_checked = 0, greedy_checked = 0;
  for (const auto& suite : bench_suites()) {
    BenchRequest req;
    req.suite = suite;
    req.seed = 10010;
    const auto rows = run_bench(req);
    const std::string csv = bench_csv(rows, false);
    t.expect(csv.find(",gap,") != std::string::npos, suite + ": csv lacks a gap column");
    for (const auto& r : rows) {
      ++rows_checked;
      if (r.objective == Objective::Makespan && r.oracle_opt) {
        ++greedy_checked;
        t.expect(r.greedy_value <= *r.oracle_opt + r.p_max, r.instance_id + ": greedy above OPT + p_max");
      }
      if (r.objective != Objective::Target) {
        t.expect(r.gap.has_value(), r.instance_id + ": missing gap");
        t.expect(r.certified_bound == r.eps * r.p_max, r.instance_id + ": certified bound");
      }
      if (r.objective == Objective::Target) {
        // target rows: gap is the largest interval violation, bounded by the band
        const Rational band = (r.eps + Rational(1, static_cast<std::int64_t>(r.n))) * r.p_max;
        t.expect(r.certified_bound == band, r.instance_id + ": band " + str(r.certified_bound));
        if (r.gap) t.expect(*r.gap <= band, r.instance_id + ": violation " + str(*r.gap) + " above the band");
      } else if (r.gap) {
        t.expect(*r.gap <= r.eps * r.p_max, r.instance_id + ": gap " + str(*r.gap) + " above eps p_max");
      }
      if (r.oracle_infeasible) t.expect(r.scheme_infeasible, r.instance_id + ": scheme solved an infeasible row");
      if (r.scheme_infeasible) t.expect(r.oracle_infeasible, r.instance_id + ": scheme infeasible, oracle feasible");
    }
  }
  // greedy also against the random makespan suite
  for (const auto& c : random_suite(1001, 100)) {
    const auto g = greedy_list_schedule(c.jobs, c.m);
    const std::int64_t opt = brute_force_opt(c.jobs, c.m, Objective::Makespan);
    const std::int64_t pmax = *std::max_element(c.jobs.begin(), c.jobs.end());
    ++greedy_checked;
    t.expect(objective_value(Objective::Makespan, g.loads) <= opt + pmax, "greedy above OPT + p_max");
  }
  report(10, t,
         std::to_string(rows_checked) + " bench rows, " + std::to_string(greedy_checked) + " greedy makespan checks, " +
             fmt_seconds(seconds_since(t0)));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LOADBAL_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  const fs::path dir = fs::temp_directory_path() / "loadbal_acceptance";
  fs::create_directories(dir);
  const std::string d = dir.string();
  std::size_t compared = 0;
  GeneratorOptions g;
  g.n = 9;
  g.m = 3;
  g.k_intervals = 2;
  g.seed = 11;
  write_json_file(d + "/inst.json", instance_to_json(generate_instance(g)));
  for (const std::string obj : {"target", "makespan", "santa", "envy"}) {
    const std::string common = "solve --instance " + d + "/inst.json --eps 1/2 --seed 11 --objective " + obj;
    for (int run = 0; run < 2; ++run) {
      const std::string sfx = obj + std::to_string(run);
      const int code = run_cli(common + " --out " + d + "/sol_" + sfx + ".json --trace " + d + "/trace_" + sfx + ".json");
      t.expect(code == 0 || code == 2, "solve " + obj + " exit code " + std::to_string(code));
    }
    t.expect(slurp(dir / ("sol_" + obj + "0.json")) == slurp(dir / ("sol_" + obj + "1.json")), "solve " + obj + " differs");
    t.expect(slurp(dir / ("trace_" + obj + "0.json")) == slurp(dir / ("trace_" + obj + "1.json")),
             "trace " + obj + " differs");
    t.expect(!slurp(dir / ("sol_" + obj + "0.json")).empty(), "solve " + obj + " wrote nothing");
    compared += 2;
  }
  for (const auto& suite : bench_suites()) {
    for (int run = 0; run < 2; ++run) {
      const int code = run_cli("bench --suite " + suite + " --seed 11 --count 5 --out " + d + "/bench_" + suite +
                               std::to_string(run) + ".csv");
      t.expect(code == 0, "bench " + suite + " exit code " + std::to_string(code));
    }
    const std::string a = slurp(dir / ("bench_" + suite + "0.csv"));
    t.expect(!a.empty() && a == slurp(dir / ("bench_" + suite + "1.csv")), "bench " + suite + " differs");
    ++compared;
  }
  report(11, t, std::to_string(compared) + " output pairs byte-identical, " + fmt_seconds(seconds_since(t0)));
}

}  // namespace

int main() {
  try {
    const auto suite = random_suite(1001, 100);
    objective_criterion(1, Objective::Makespan, suite);
    objective_criterion(2, Objective::Santa, suite);
    criterion_envy(suite);
    criterion_band();
    criterion_agreement();
    const std::string runs = std::to_string(pipeline.dp_runs) + " dp outputs";
    report(5, c5, runs + " checked against the ordering conditions");
    report(7, c7, runs + " reconstructed; column sums, slot counts and volume bounds exact");
    const std::size_t suite_swaps = pipeline.records;
    rounding_stress(300);
    report(8, c8,
           std::to_string(pipeline.rounding_runs) + " rounding runs (300 stress), " +
               std::to_string(pipeline.records) + " instrumented swaps (" + std::to_string(suite_swaps) +
               " from suites 1-4 and 6)");
    criterion_averaging();
    criterion_greedy();
    criterion_determinism();
  } catch (const std::exception& e) {
    for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
    std::printf("acceptance aborted: %s\n", e.what());
    return 1;
  }
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  return all_pass ? 0 : 1;
}
