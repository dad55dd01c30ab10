#include "loadbal/fractional_assignment.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "loadbal/errors.hpp"

namespace loadbal {

const char* to_string(SwapStop s) {
  switch (s) {
    case SwapStop::ReceiverSatisfied: return "receiver-satisfied";
    case SwapStop::DonorTight: return "donor-tight";
    case SwapStop::ReceiverJobExhausted: return "x_ij-zero";
    case SwapStop::DonorJobExhausted: return "x_i'j'-zero";
  }
  return "?";
}

std::size_t RepairTrace::swaps_for(MachineId receiver) const {
  return static_cast<std::size_t>(std::count_if(
      swaps.begin(), swaps.end(), [&](const RepairSwap& s) { return s.receiver == receiver; }));
}

ClassBlock greedy_prefix_assign(const JobClasses& classes, const std::vector<MachineId>& order,
                                const SlotProfile& y, int k) {
  const auto members = classes.members(k);
  if (y.column_sum(k) != static_cast<std::int64_t>(members.size())) {
    throw InputError("greedy_prefix_assign: slot count of class " + std::to_string(k) +
                     " does not match its job count");
  }
  ClassBlock block(y.num_machines());
  std::size_t next = 0;
  for (MachineId i : order) {
    for (std::int64_t c = 0; c < y.at(i, k); ++c) block[i][members[next++]] = 1;
  }
  return block;
}

namespace {

Rational block_volume(const ClassBlock& block, const JobClasses& classes, MachineId i) {
  Rational v = 0;
  for (const auto& [j, w] : block[i]) v += w * classes.processing_time(j);
  return v;
}

Rational slot_target(const SlotProfile& y, const AverageSizeVector& z, MachineId i, int k) {
  return y.at(i, k) > 0 ? z.at(i, k) * y.at(i, k) : Rational(0);
}

void move_mass(ClassBlock& block, MachineId i, JobId j, const Rational& delta) {
  auto& cell = block[i][j];
  cell += delta;
  if (cell == 0) block[i].erase(j);
}

}  // namespace

void repair_overload(ClassBlock& block, const JobClasses& classes, int k,
                     const std::vector<MachineId>& order, std::size_t position,
                     const SlotProfile& y, const AverageSizeVector& z, RepairTrace& trace) {
  const MachineId recv = order[position];
  const Rational recv_target = slot_target(y, z, recv, k);
  Rational recv_load = block_volume(block, classes, recv);
  std::set<std::tuple<MachineId, JobId, JobId>> used;

  while (recv_load > recv_target) {
    std::optional<MachineId> donor;
    Rational donor_load;
    Rational donor_target;
    for (std::size_t t = 0; t < position; ++t) {
      const MachineId cand = order[t];
      if (y.at(cand, k) == 0) continue;
      const Rational load = block_volume(block, classes, cand);
      const Rational target = slot_target(y, z, cand, k);
      if (load < target) {
        donor = cand;
        donor_load = load;
        donor_target = target;
        break;
      }
    }
    if (!donor) {
      throw InternalError("repair_overload: machine " + std::to_string(recv) + " class " +
                          std::to_string(k) + " overloaded without an underloaded donor");
    }
    const Rational& z_recv = z.at(recv, k);
    const Rational& z_donor = z.at(*donor, k);

    // Donor's smallest job strictly below its average, receiver's largest strictly above.
    std::optional<JobId> small;
    for (const auto& [j, w] : block[*donor]) {
      if (classes.processing_time(j) >= z_donor) continue;
      if (!small || classes.processing_time(j) < classes.processing_time(*small)) small = j;
    }
    std::optional<JobId> large;
    for (const auto& [j, w] : block[recv]) {
      if (classes.processing_time(j) <= z_recv) continue;
      if (!large || classes.processing_time(j) > classes.processing_time(*large)) large = j;
    }
    if (!small || !large) {
      throw InternalError("repair_overload: no eligible job pair for machine " + std::to_string(recv));
    }
    if (!used.emplace(*donor, *large, *small).second) {
      throw InternalError("repair_overload: job pair reused for machine " + std::to_string(recv));
    }
    const Rational diff = classes.processing_time(*large) - classes.processing_time(*small);

    RepairSwap swap;
    swap.job_class = k;
    swap.receiver = recv;
    swap.donor = *donor;
    swap.large_job = *large;
    swap.small_job = *small;
    swap.alpha = (recv_load - recv_target) / diff;
    swap.stop = SwapStop::ReceiverSatisfied;
    const Rational donor_room = (donor_target - donor_load) / diff;
    if (donor_room < swap.alpha) {
      swap.alpha = donor_room;
      swap.stop = SwapStop::DonorTight;
    }
    const Rational x_large = block[recv].at(*large);
    if (x_large < swap.alpha) {
      swap.alpha = x_large;
      swap.stop = SwapStop::ReceiverJobExhausted;
    }
    const Rational x_small = block[*donor].at(*small);
    if (x_small < swap.alpha) {
      swap.alpha = x_small;
      swap.stop = SwapStop::DonorJobExhausted;
    }
    if (swap.alpha <= 0) throw InternalError("repair_overload: non-positive swap amount");

    move_mass(block, recv, *small, swap.alpha);
    move_mass(block, recv, *large, -swap.alpha);
    move_mass(block, *donor, *small, -swap.alpha);
    move_mass(block, *donor, *large, swap.alpha);
    recv_load -= swap.alpha * diff;
    trace.swaps.push_back(std::move(swap));
  }
}

FractionalResult build_fractional(const Instance& inst, const JobClasses& classes,
                                  const std::vector<MachineId>& order, const SlotProfile& y,
                                  const AverageSizeVector& z, const Rational& delta) {
  const auto report = check_ordering_conditions(inst, classes, order, y, z, delta);
  if (!report.ok()) {
    const auto& f = report.failures.front();
    throw InputError(std::string("build_fractional: ordering condition ") + to_string(f.condition) +
                     " fails at position " + std::to_string(f.position));
  }
  const std::size_t m = inst.num_machines();
  const int q = classes.num_classes();
  FractionalResult result{FractionalAssignment(m, inst.num_jobs()), {}};
  const Rational under_slack = delta * inst.p_max() / q;

  for (int k = 0; k < q; ++k) {
    if (classes.size(k) == 0) continue;
    ClassBlock block = greedy_prefix_assign(classes, order, y, k);
    for (std::size_t t = 0; t < m; ++t) {
      repair_overload(block, classes, k, order, t, y, z, result.trace);
    }
    for (MachineId i = 0; i < m; ++i) {
      const Rational volume = block_volume(block, classes, i);
      const Rational target = slot_target(y, z, i, k);
      if (volume > target || volume < target - under_slack) {
        throw InternalError("build_fractional: class volume of machine " + std::to_string(i) +
                            " outside [y z - delta p_max / q, y z]");
      }
      for (const auto& [j, w] : block[i]) result.x.set(i, j, w);
    }
  }
  return result;
}

}  // namespace loadbal
