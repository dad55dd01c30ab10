// loadbal: command line front end for the target load balancing solver.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "loadbal/commands.hpp"
#include "loadbal/errors.hpp"
#include "loadbal/generator.hpp"
#include "loadbal/io.hpp"
#include "loadbal/oracle.hpp"
#include "loadbal/verify.hpp"

using namespace loadbal;

namespace {

Objective objective_flag(const std::string& text) {
  auto o = parse_objective(text);
  if (!o) throw InputError("--objective: expected target, makespan, santa or envy, got '" + text + "'");
  return *o;
}

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(name + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

struct SolveFlags {
  std::string instance, eps, delta, objective = "target", trace, out = "-";
  bool exact = false;
  std::optional<std::uint64_t> seed;
};

int run_solve(const SolveFlags& f) {
  const Instance inst = instance_from_json(read_json_file(f.instance));
  SolveRequest req;
  req.eps = rational_flag("--eps", f.eps);
  if (!f.delta.empty()) req.delta = rational_flag("--delta", f.delta);
  req.objective = objective_flag(f.objective);
  req.exact = f.exact;
  req.trace = !f.trace.empty();
  req.seed = f.seed;
  const SolveResponse resp = solve_instance(inst, req);
  write_json_file(f.out, solution_to_json(resp.solution));
  if (req.trace) write_json_file(f.trace, resp.trace);
  if (resp.exit_code == kExitInfeasible) std::cerr << "infeasible: no assignment meets the target intervals\n";
  return resp.exit_code;
}

struct GenerateFlags {
  GeneratorOptions options;
  std::string style = "target", out = "-";
};

int run_generate(GenerateFlags f) {
  f.options.style = objective_flag(f.style);
  write_json_file(f.out, instance_to_json(generate_instance(f.options)));
  return kExitSolved;
}

struct VerifyFlags {
  std::string instance, solution, eps, delta = "0";
};

int run_verify(const VerifyFlags& f) {
  const Instance inst = instance_from_json(read_json_file(f.instance));
  const SolutionDocument sol = solution_from_json(read_json_file(f.solution));
  if (sol.assignment.empty() && inst.num_jobs() > 0) {
    std::cerr << "solution carries no assignment\n";
    return kExitInputError;
  }
  const VerifyReport r = verify_assignment(inst, sol.assignment, sol.loads, rational_flag("--eps", f.eps),
                                           rational_flag("--delta", f.delta));
  for (const auto& m : r.machines) {
    std::cout << "machine " << m.machine << ": load " << to_string(m.load) << " in [" << to_string(m.lower) << ", "
              << to_string(m.upper) << "] " << (m.ok ? "ok" : "VIOLATED") << "\n";
  }
  for (const auto& e : r.errors) std::cerr << e << "\n";
  std::cout << (r.pass() ? "PASS" : "FAIL") << " band " << to_string(r.band) << "\n";
  return r.pass() ? kExitSolved : kExitInputError;
}

struct BenchFlags {
  BenchRequest request;
  std::string out = "-";
};

int run_bench_cmd(const BenchFlags& f) {
  write_text(f.out, bench_csv(run_bench(f.request), f.request.timing));
  return kExitSolved;
}

struct OracleFlags {
  std::string instance, objective = "target";
};

int run_oracle(const OracleFlags& f) {
  const Instance inst = instance_from_json(read_json_file(f.instance));
  const Objective o = objective_flag(f.objective);
  Json doc = {{"objective", to_string(o)}};
  if (o == Objective::Target) {
    const auto a = brute_force_target(inst);
    doc["feasible"] = a.has_value();
    doc["assignment"] = a ? Json(*a) : Json(nullptr);
    write_json_file("-", doc);
    return a ? kExitSolved : kExitInfeasible;
  }
  const std::vector<std::int64_t> jobs(inst.jobs().begin(), inst.jobs().end());
  doc["value"] = brute_force_opt(jobs, inst.num_machines(), o);
  write_json_file("-", doc);
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Target load balancing with additive guarantees"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "Solve an instance");
  s->add_option("--instance", solve.instance, "instance JSON")->required();
  s->add_option("--eps", solve.eps, "accuracy, e.g. 1/2")->required();
  s->add_option("--delta", solve.delta, "relaxation slack for the target objective (default 1/n)");
  s->add_option("--objective", solve.objective, "target | makespan | santa | envy");
  s->add_flag("--exact", solve.exact, "use exact enumeration for the relaxation");
  s->add_option("--trace", solve.trace, "write repair and swap trace JSON here");
  s->add_option("--seed", solve.seed, "recorded in the output");
  s->add_option("--out", solve.out, "solution path ('-' for stdout)");

  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "Generate a random instance");
  g->add_option("--n", gen.options.n)->required();
  g->add_option("--m", gen.options.m)->required();
  g->add_option("--pmax", gen.options.pmax);
  g->add_option("--k-intervals", gen.options.k_intervals);
  g->add_option("--objective-style", gen.style);
  g->add_option("--seed", gen.options.seed);
  g->add_flag("--planted-balance", gen.options.planted_balance);
  g->add_option("--out", gen.out);

  VerifyFlags ver;
  auto* v = app.add_subcommand("verify", "Check a solution against the load band");
  v->add_option("--instance", ver.instance)->required();
  v->add_option("--solution", ver.solution)->required();
  v->add_option("--eps", ver.eps)->required();
  v->add_option("--delta", ver.delta);

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  b->add_option("--suite", bench.request.suite)->required();
  b->add_option("--seed", bench.request.seed);
  b->add_option("--count", bench.request.count, "instances (default 20)");
  b->add_flag("--timing", bench.request.timing, "fill the wall_time column");
  b->add_option("--out", bench.out);

  OracleFlags orc;
  auto* o = app.add_subcommand("oracle", "Brute-force ground truth (n <= 14)");
  o->add_option("--instance", orc.instance)->required();
  o->add_option("--objective", orc.objective);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (s->parsed()) return run_solve(solve);
    if (g->parsed()) return run_generate(gen);
    if (v->parsed()) return run_verify(ver);
    if (b->parsed()) return run_bench_cmd(bench);
    if (o->parsed()) return run_oracle(orc);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitInputError;
}
