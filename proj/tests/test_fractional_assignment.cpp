#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "loadbal/dp_solver.hpp"
#include "loadbal/errors.hpp"
#include "loadbal/fractional_assignment.hpp"

using namespace loadbal;

namespace {

SlotProfile column(std::vector<std::int64_t> ys) {
  SlotProfile y(ys.size(), 1);
  for (std::size_t i = 0; i < ys.size(); ++i) y.at(i, 0) = ys[i];
  return y;
}

AverageSizeVector single_class_z(std::vector<Rational> zs, const SlotProfile& y) {
  AverageSizeVector z(zs.size(), 1);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    z.at(i, 0) = zs[i];
    z.set_defined(i, 0, y.at(i, 0) > 0);
  }
  return z;
}

std::vector<std::int64_t> block_jobs(const ClassBlock& b, const JobClasses& c, MachineId i) {
  std::vector<std::int64_t> out;
  for (const auto& [j, v] : b[i]) {
    if (v == 1) out.push_back(c.processing_time(j));
  }
  return out;
}

}  // namespace

TEST_CASE("greedy_prefix_assign examples") {
  Instance inst({1, 2, 3}, {{0, 10}, {0, 10}});
  JobClasses c(inst, Epsilon(1));
  auto b = greedy_prefix_assign(c, {0, 1}, column({2, 1}), 0);
  CHECK(block_jobs(b, c, 0) == std::vector<std::int64_t>{1, 2});
  CHECK(block_jobs(b, c, 1) == std::vector<std::int64_t>{3});
  b = greedy_prefix_assign(c, {0, 1}, column({0, 3}), 0);
  CHECK(block_jobs(b, c, 1) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(b[0].empty());
  b = greedy_prefix_assign(c, {0, 1}, column({3, 0}), 0);
  CHECK(block_jobs(b, c, 0) == std::vector<std::int64_t>{1, 2, 3});
  // order matters: position 0 is machine 1
  b = greedy_prefix_assign(c, {1, 0}, column({1, 2}), 0);
  CHECK(block_jobs(b, c, 1) == std::vector<std::int64_t>{1, 2});
  CHECK_THROWS_AS(greedy_prefix_assign(c, {0, 1}, column({1, 1}), 0), InputError);
}

TEST_CASE("build_fractional: greedy already satisfies the targets") {
  Instance inst({2, 4}, {{0, 10}, {0, 10}});
  JobClasses c(inst, Epsilon(1));
  const SlotProfile y = column({1, 1});
  auto r = build_fractional(inst, c, {0, 1}, y, single_class_z({2, 4}, y), 0);
  CHECK(r.trace.swaps.empty());
  CHECK(r.x.get(0, 0) == 1);
  CHECK(r.x.get(1, 1) == 1);
}

TEST_CASE("build_fractional: one half-swap balances 2 and 4") {
  // worked by hand: greedy gives class volumes (2, 4) against targets (3, 3);
  // moving alpha of job 4 down and alpha of job 2 up changes the volumes by
  // 2 alpha, so alpha = 1/2 restores machine 2 exactly.
  Instance inst({2, 4}, {{0, 10}, {0, 10}});
  JobClasses c(inst, Epsilon(1));
  const SlotProfile y = column({1, 1});
  auto r = build_fractional(inst, c, {0, 1}, y, single_class_z({3, 3}, y), 0);
  REQUIRE(r.trace.swaps.size() == 1);
  const RepairSwap& s = r.trace.swaps[0];
  CHECK(s.alpha == Rational(1, 2));
  CHECK(s.stop == SwapStop::ReceiverSatisfied);
  CHECK(s.receiver == 1);
  CHECK(s.donor == 0);
  CHECK(s.large_job == 1);
  CHECK(s.small_job == 0);
  for (MachineId i = 0; i < 2; ++i) {
    for (JobId j = 0; j < 2; ++j) CHECK(r.x.get(i, j) == Rational(1, 2));
    CHECK(class_volume(c, r.x, i, 0) == 3);
  }
  CHECK(std::string(to_string(SwapStop::ReceiverSatisfied)) == "receiver-satisfied");
  CHECK(std::string(to_string(SwapStop::DonorTight)) == "donor-tight");
  CHECK(std::string(to_string(SwapStop::ReceiverJobExhausted)) == "x_ij-zero");
  CHECK(std::string(to_string(SwapStop::DonorJobExhausted)) == "x_i'j'-zero");
}

TEST_CASE("build_fractional rejects inputs that fail the ordering conditions") {
  Instance inst({2, 4}, {{0, 10}, {0, 10}});
  JobClasses c(inst, Epsilon(1));
  const SlotProfile y = column({1, 1});
  CHECK_THROWS_AS(build_fractional(inst, c, {0, 1}, y, single_class_z({4, 2}, y), 0), InputError);
}

TEST_CASE("repair_overload leaves a satisfied machine alone") {
  Instance inst({2, 4}, {{0, 10}, {0, 10}});
  JobClasses c(inst, Epsilon(1));
  const SlotProfile y = column({1, 1});
  auto block = greedy_prefix_assign(c, {0, 1}, y, 0);
  RepairTrace trace;
  repair_overload(block, c, 0, {0, 1}, 1, y, single_class_z({2, 4}, y), trace);
  CHECK(trace.swaps.empty());
}

TEST_CASE("build_fractional on dp outputs meets both volume bounds exactly") {
  std::mt19937_64 rng(77);
  int built = 0;
  for (int t = 0; t < 300; ++t) {
    Instance inst = testutil::random_target(rng, 9, 3, 15);
    const int q = static_cast<int>(uniform_int(rng, 1, 3));
    JobClasses c(inst, Epsilon(q));
    const Rational delta(1, static_cast<std::int64_t>(inst.num_jobs()));
    auto r = solve_slot_milp_dp(inst, c, delta);
    if (!r.feasible()) continue;
    ++built;
    const auto& s = *r.solution;
    auto f = build_fractional(inst, c, s.order, s.y, s.z, delta);
    const Rational slack = delta * inst.p_max() / q;
    for (MachineId i = 0; i < inst.num_machines(); ++i) {
      for (int k = 0; k < q; ++k) {
        const Rational target = s.z.at(i, k) * s.y.at(i, k);
        const Rational vol = class_volume(c, f.x, i, k);
        CHECK(vol <= target);
        CHECK(vol >= target - slack);
      }
      CHECK(f.trace.swaps_for(i) <= inst.num_jobs() * inst.num_jobs());
    }
    for (const auto& sw : f.trace.swaps) CHECK(sw.alpha > 0);
    CHECK(check_slot_feasible(inst, c, f.x, s.y, delta).feasible());
  }
  CHECK(built > 50);
}
