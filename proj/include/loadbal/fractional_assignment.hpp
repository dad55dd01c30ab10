#pragma once

#include <map>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/rational.hpp"
#include "loadbal/slot_relaxation.hpp"

namespace loadbal {

/// Mass of one class on every machine: block[i][j] = x(i, j) for j in J_k.
using ClassBlock = std::vector<std::map<JobId, Rational>>;

enum class SwapStop {
  ReceiverSatisfied,
  DonorTight,
  ReceiverJobExhausted,   ///< x(i, j) reached zero
  DonorJobExhausted,      ///< x(i', j') reached zero
};

const char* to_string(SwapStop s);

struct RepairSwap {
  int job_class = 0;
  MachineId receiver = 0;   ///< overloaded machine being repaired
  MachineId donor = 0;      ///< strictly underloaded earlier machine
  JobId large_job = 0;      ///< moves from receiver to donor
  JobId small_job = 0;      ///< moves from donor to receiver
  Rational alpha;
  SwapStop stop = SwapStop::ReceiverSatisfied;
};

struct RepairTrace {
  std::vector<RepairSwap> swaps;

  /// Number of swaps executed while repairing `receiver`.
  std::size_t swaps_for(MachineId receiver) const;
};

/// Integral greedy start for class k: the machine at order position 0 takes
/// the y smallest jobs, the next position the following ones, and so on.
ClassBlock greedy_prefix_assign(const JobClasses& classes, const std::vector<MachineId>& order,
                                const SlotProfile& y, int k);

/// Restores sum_{j in J_k} p_j x(i, j) <= y(i, k) z(i, k) for the machine at
/// order position `position` by fractional swaps with earlier machines.
/// Appends the executed swaps to `trace`. Throws InternalError if no
/// strictly underloaded donor exists while the machine is overloaded.
void repair_overload(ClassBlock& block, const JobClasses& classes, int k,
                     const std::vector<MachineId>& order, std::size_t position,
                     const SlotProfile& y, const AverageSizeVector& z, RepairTrace& trace);

struct FractionalResult {
  FractionalAssignment x;
  RepairTrace trace;
};

/// Builds x with sum_k-class volume in [y z - delta p_max / q, y z] for every
/// machine and class. Re-checks the ordering conditions first and throws
/// InputError when they fail.
FractionalResult build_fractional(const Instance& inst, const JobClasses& classes,
                                  const std::vector<MachineId>& order, const SlotProfile& y,
                                  const AverageSizeVector& z, const Rational& delta);

}  // namespace loadbal
