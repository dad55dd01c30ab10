#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "loadbal/applications.hpp"
#include "loadbal/errors.hpp"
#include "loadbal/oracle.hpp"

using namespace loadbal;

TEST_CASE("calibrate") {
  auto c = calibrate(Rational(1, 2), Objective::Makespan);
  CHECK(c.q_int == 6);
  CHECK(c.delta == Rational(1, 6));
  CHECK(calibrate(1, Objective::Santa).q_int == 3);
  CHECK(calibrate(Rational(1, 3), Objective::Envy).q_int == 18);
  CHECK(calibrate(Rational(2, 5), Objective::Makespan).q_int == 8);
  c = calibrate(Rational(2, 5), Objective::Target);
  CHECK(c.q_int == 3);
  CHECK(c.delta == 0);
  CHECK_THROWS_AS(calibrate(0, Objective::Makespan), InputError);
  CHECK_THROWS_AS(calibrate(Rational(3, 2), Objective::Envy), InputError);
}

TEST_CASE("solve_target examples") {
  auto r = solve_target(testutil::uniform({4}, 1, 0, 4), Epsilon(1), 1);
  REQUIRE(r.solved());
  CHECK(r.path == SolverPath::Exact);   // small enough for enumeration
  CHECK(r.loads == std::vector<std::int64_t>{4});
  CHECK(r.band == 4);
  SolveOptions dp_only;
  dp_only.path = SolverPath::Dp;
  r = solve_target(testutil::uniform({4}, 1, 0, 4), Epsilon(1), 1, dp_only);
  REQUIRE(r.solved());
  CHECK(r.path == SolverPath::Dp);
  CHECK(r.band == 8);
  CHECK_FALSE(solve_target(testutil::uniform({5, 5}, 2, 0, 4), Epsilon(2), Rational(1, 2)).solved());
  SolveOptions exact;
  exact.path = SolverPath::Exact;
  r = solve_target(testutil::uniform({5, 5}, 2, 5, 5), Epsilon(1), 0, exact);
  REQUIRE(r.solved());
  CHECK(r.path == SolverPath::Exact);
  CHECK(r.band == 5);
  SolveOptions dp;
  dp.path = SolverPath::Dp;
  CHECK_THROWS_AS(solve_target(testutil::uniform({5, 5}, 2, 5, 5), Epsilon(1), 0, dp), InputError);
}

TEST_CASE("solve_target with no jobs") {
  Instance empty({}, {{0, 3}, {0, 0}});
  CHECK(solve_target(empty, Epsilon(1), Rational(1, 2)).solved());
  Instance needs({}, {{1, 3}});
  CHECK_FALSE(solve_target(needs, Epsilon(1), Rational(1, 2)).solved());
}

TEST_CASE("objective examples") {
  auto r = solve_makespan({3, 3, 3, 3}, 2, Rational(1, 2));
  CHECK(r.value == 6);
  CHECK(r.certified_bound == Rational(3, 2));
  CHECK(r.loads.size() == 2);
  CHECK(solve_makespan({5}, 3, Rational(1, 2)).value == 5);
  CHECK(solve_santa({3, 3}, 2, Rational(1, 2)).value == 3);
  CHECK(solve_santa({5}, 2, Rational(1, 2)).value == 0);
  CHECK(solve_envy({1}, 2, Rational(1, 2)).value == 1);
  auto e = solve_envy({1, 2, 3}, 2, Rational(1, 3));
  CHECK(Rational(e.value) <= e.certified_bound);
  CHECK(solve_objective(Objective::Santa, {3, 3}, 2, Rational(1, 2)).objective == Objective::Santa);
  CHECK_THROWS_AS(solve_objective(Objective::Target, {3}, 1, Rational(1, 2)), InputError);
  CHECK_THROWS_AS(solve_makespan({3}, 0, Rational(1, 2)), InputError);
}

TEST_CASE("greedy list scheduling") {
  auto g = greedy_list_schedule({3, 2, 2}, 2);
  CHECK(g.loads == std::vector<std::int64_t>{3, 4});
  CHECK(g.assignment == std::vector<MachineId>{0, 1, 1});
  CHECK(greedy_list_schedule({5}, 3).loads == std::vector<std::int64_t>{5, 0, 0});
}

TEST_CASE("makespan grid is monotone") {
  std::mt19937_64 rng(17);
  ApplicationOptions opt;
  opt.check_monotone_grid = true;
  for (int t = 0; t < 10; ++t) {
    const auto jobs = testutil::random_jobs(rng, static_cast<std::size_t>(uniform_int(rng, 2, 7)), 15);
    const auto m = static_cast<std::size_t>(uniform_int(rng, 2, 3));
    auto a = solve_makespan(jobs, m, Rational(1, 2));
    auto b = solve_makespan(jobs, m, Rational(1, 2), opt);
    CHECK(a.value == b.value);
    CHECK(b.grid_points_tried >= a.grid_points_tried);
  }
}

TEST_CASE("objective guarantees against the oracle") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 15; ++t) {
    const auto jobs = testutil::random_jobs(rng, static_cast<std::size_t>(uniform_int(rng, 3, 8)), 20);
    const auto m = static_cast<std::size_t>(uniform_int(rng, 2, 3));
    for (Objective o : {Objective::Makespan, Objective::Santa, Objective::Envy}) {
      auto r = solve_objective(o, jobs, m, Rational(1, 2));
      const auto opt = brute_force_opt(jobs, m, o);
      CHECK(r.value == objective_value(o, r.loads));
      if (o == Objective::Santa) CHECK(Rational(r.value) >= Rational(opt) - r.certified_bound);
      else CHECK(Rational(r.value) <= Rational(opt) + r.certified_bound);
    }
  }
}
