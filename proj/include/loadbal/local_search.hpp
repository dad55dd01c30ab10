#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/rational.hpp"
#include "loadbal/slot_relaxation.hpp"

namespace loadbal {

struct SlotRef {
  MachineId machine = 0;
  int job_class = 0;
  std::size_t index = 0;

  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

/// Integral assignment of jobs to slots. Slot counts per machine and class
/// are fixed at construction; swaps exchange the jobs of two slots.
class SlotAssignment {
 public:
  SlotAssignment(const JobClasses& classes, const SlotProfile& y);

  std::size_t num_machines() const { return slots_.size(); }
  int num_classes() const { return q_; }
  std::size_t num_slots() const { return job_of_slot_.size(); }

  std::span<const JobId> slots(MachineId i, int k) const { return slots_[i][k]; }
  JobId job_at(const SlotRef& s) const { return slots_[s.machine][s.job_class][s.index]; }
  const SlotRef& slot_of(JobId j) const { return slot_of_job_[j]; }
  MachineId machine_of(JobId j) const { return slot_of_job_[j].machine; }

  /// Global slot numbering in (machine, class, index) order.
  std::size_t slot_index(const SlotRef& s) const { return offset_[s.machine][s.job_class] + s.index; }
  const SlotRef& slot_ref(std::size_t index) const { return ref_of_slot_[index]; }
  JobId job_at(std::size_t index) const { return job_of_slot_[index]; }

  std::int64_t load(MachineId i) const { return loads_[i]; }
  const std::vector<std::int64_t>& loads() const { return loads_; }
  std::int64_t processing_time(JobId j) const { return p_[j]; }

  /// Places job j into slot s. Used to fill an empty assignment.
  void place(const SlotRef& s, JobId j);
  void swap(const SlotRef& a, const SlotRef& b);

  /// Job -> machine map.
  std::vector<MachineId> assignment() const;
  /// True iff every job sits in exactly one slot of its own class and the
  /// cached loads match a recomputation.
  bool consistent(const JobClasses& classes) const;
  /// Number of jobs of class k on machine i.
  std::size_t count(MachineId i, int k) const { return slots_[i][k].size(); }

 private:
  static constexpr JobId kEmpty = static_cast<JobId>(-1);

  int q_ = 0;
  std::vector<std::int64_t> p_;
  std::vector<std::vector<std::vector<JobId>>> slots_;
  std::vector<std::vector<std::size_t>> offset_;
  std::vector<SlotRef> ref_of_slot_;
  std::vector<JobId> job_of_slot_;
  std::vector<SlotRef> slot_of_job_;
  std::vector<std::int64_t> loads_;
};

/// Class-k jobs in ascending order fill machines in index order.
SlotAssignment initial_integral(const JobClasses& classes, const SlotProfile& y);

enum class Stage { Overload = 1, Underload = 2 };

/// Load bounds the rounding works against: l' = l - delta p_max,
/// u' = u + delta p_max, plus the tolerance eps p_max.
struct EffectiveBounds {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  Rational tolerance;

  /// Machine needs repair in the given stage.
  bool violates(Stage stage, MachineId i, std::int64_t load) const;
  /// Machine may receive a swap in the given stage.
  bool receives(Stage stage, MachineId i, std::int64_t load) const;
};

EffectiveBounds effective_bounds(const Instance& inst, Epsilon eps, const Rational& delta);

/// Source, intra-machine weight-0 cliques and same-class weight-1 edges
/// between machines, oriented by job size for the stage.
struct SlotGraph {
  std::size_t num_slots = 0;
  std::vector<std::size_t> source_edges;
  std::vector<std::vector<std::size_t>> zero_edges;
  std::vector<std::vector<std::size_t>> one_edges;
};

SlotGraph build_slot_graph(const SlotAssignment& a, Stage stage, const EffectiveBounds& bounds);

/// Distances from the source in weight-1 hops; unreachable slots get
/// `unreachable`.
std::vector<std::int64_t> distances(const SlotGraph& g, std::int64_t unreachable);

struct Swap {
  std::size_t from = 0;   ///< slot u (reached first)
  std::size_t to = 0;     ///< slot v on the receiving machine
};

/// 0-1 BFS from the source; returns the first weight-1 edge entering a
/// receiving machine. nullopt when no such edge is reachable.
std::optional<Swap> find_swap_bfs(const SlotGraph& g, const SlotAssignment& a, Stage stage,
                                  const EffectiveBounds& bounds);

struct SwapRecord {
  Stage stage = Stage::Overload;
  std::size_t from_slot = 0;
  std::size_t to_slot = 0;
  JobId from_job = 0;   ///< job that left slot `from_slot`
  JobId to_job = 0;
  std::vector<std::int64_t> distances_before;
  std::vector<std::int64_t> distances_after;
  std::int64_t potential_before = 0;
  std::int64_t potential_after = 0;
};

/// sum_i i d(j_i) with jobs ordered ascending (stage 1) or descending
/// (stage 2) by size, ties by id; distances indexed by slot.
std::int64_t potential(const SlotAssignment& a, Stage stage, const std::vector<std::int64_t>& dist);

struct RoundingOptions {
  bool instrument = false;
  bool check_witness = true;   ///< verify (x, y) against the widened relaxation first
};

struct RoundingResult {
  SlotAssignment assignment;
  std::vector<SwapRecord> records;   ///< empty unless instrumented
  std::size_t stage1_swaps = 0;
  std::size_t stage2_swaps = 0;
};

/// Two-stage local search. Every final load lies in
/// [l - (delta + eps) p_max, u + (delta + eps) p_max]. Throws InternalError
/// if no swap exists while a machine violates, or a stage exceeds n^3 swaps.
RoundingResult round_solution(const Instance& inst, const JobClasses& classes,
                              const FractionalAssignment& x, const SlotProfile& y, Epsilon eps,
                              const Rational& delta, const RoundingOptions& options = {});

}  // namespace loadbal
