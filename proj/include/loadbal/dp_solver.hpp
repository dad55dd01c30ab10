#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/rational.hpp"
#include "loadbal/slot_relaxation.hpp"

namespace loadbal {

/// Discretization used by the dynamic program.
///
/// All quantities are held as integer "ticks" of size 1/ticks_per_unit so that
/// grid arithmetic is exact and cheap. The grid step is delta * p_max / (q n);
/// z ranges over multiples of the step up to p_max (p_max itself is always a
/// grid value), S ranges over sums y * z.
class DpGrid {
 public:
  DpGrid(const Instance& inst, const JobClasses& classes, const Rational& delta);

  std::int64_t ticks_per_unit() const { return ticks_per_unit_; }
  std::int64_t step() const { return step_; }
  std::int64_t cap() const { return cap_; }
  const Rational& delta() const { return delta_; }

  std::int64_t from_integer(std::int64_t v) const { return v * ticks_per_unit_; }
  Rational to_rational(std::int64_t ticks) const { return Rational(ticks, ticks_per_unit_); }
  /// Smallest tick count t with t / ticks_per_unit >= v.
  std::int64_t ceil_ticks(const Rational& v) const;
  /// Largest tick count t with t / ticks_per_unit <= v.
  std::int64_t floor_ticks(const Rational& v) const;

  bool on_grid(std::int64_t z) const { return z >= 0 && z <= cap_ && (z % step_ == 0 || z == cap_); }
  /// Smallest grid value >= v (v <= cap).
  std::int64_t grid_ceil(std::int64_t v) const;
  /// Grid value following z, or nullopt past the cap.
  std::optional<std::int64_t> grid_next(std::int64_t z) const;

 private:
  Rational delta_;
  std::int64_t ticks_per_unit_ = 1;
  std::int64_t step_ = 1;
  std::int64_t cap_ = 0;
};

/// One DP cell: machines placed per interval type, z of the last machine with
/// a slot in each class, jobs placed per class and accumulated volume S_k.
struct DpState {
  std::vector<std::int64_t> used;     ///< m'_r per interval type
  std::vector<std::int64_t> z_prev;   ///< per class, ticks
  std::vector<std::int64_t> placed;   ///< n'_k per class
  std::vector<std::int64_t> volume;   ///< S_k per class, ticks

  std::int64_t machines_placed() const;
  friend bool operator==(const DpState&, const DpState&) = default;
};

struct MachineGuess {
  std::size_t type = 0;
  std::vector<std::int64_t> y;
  std::vector<std::int64_t> z;   ///< ticks; entries with y = 0 are ignored

  friend bool operator==(const MachineGuess&, const MachineGuess&) = default;
};

enum class Rejection {
  TypeExhausted,    ///< no machine of the guessed type left
  SlotOverflow,     ///< more slots than remaining jobs, or z off the grid
  ClassCap,         ///< S_k above total + delta eps p_max
  Monotonicity,     ///< z_k below the previous machine's z_k
  MinJobsBound,     ///< S_k below the n'_k smallest jobs
  MachineBounds,    ///< machine volume outside [l, u + delta p_max]
};

inline constexpr std::size_t kRejectionKinds = 6;

/// Read-only context shared by the DP operations.
struct DpContext {
  const Instance& inst;
  const JobClasses& classes;
  const IntervalCatalog& catalog;
  const DpGrid& grid;

  DpState initial_state() const;
  std::int64_t class_total(int k) const { return grid.from_integer(classes.total(k)); }
  std::int64_t class_slack() const;        ///< delta * p_max / q in ticks (floor)
  std::int64_t lower_ticks(std::size_t r) const;
  std::int64_t upper_ticks(std::size_t r) const;   ///< u + delta p_max, floor
};

/// Applies a guess to a state, enforcing class cap, masked monotonicity,
/// prefix bound and machine bounds.
std::variant<DpState, Rejection> dp_transition(const DpContext& ctx, const DpState& state,
                                               const MachineGuess& guess);

/// True iff every machine and job is placed and every class volume lies in
/// [total, total + delta eps p_max].
bool accept_final(const DpContext& ctx, const DpState& state);

struct SlotMilpSolution {
  std::vector<MachineId> order;          ///< order[t] = machine at position t
  SlotProfile y;
  AverageSizeVector z;
  std::vector<MachineGuess> sequence;    ///< per position, in ticks
  Rational delta;
};

/// Turns the per-position guess sequence into machine indices (types filled
/// in increasing machine index) and rational z. Masked z entries carry the
/// previous defined value. Throws InternalError if replay does not accept.
SlotMilpSolution reconstruct(const DpContext& ctx, const std::vector<MachineGuess>& sequence);

struct DpLimits {
  std::size_t max_states = 5'000'000;

  /// Honors LOADBAL_MAX_STATES when set.
  static DpLimits from_environment();
};

struct DpStats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t rejected[kRejectionKinds] = {};
  std::size_t pruned = 0;   ///< successor states that cannot reach an accepting cell
};

struct DpResult {
  std::optional<SlotMilpSolution> solution;   ///< nullopt: slot relaxation infeasible
  DpStats stats;

  bool feasible() const { return solution.has_value(); }
};

/// Searches the DP cells depth-first in canonical guess order, memoizing
/// every visited cell. Throws ResourceLimitError when more than
/// limits.max_states cells are visited.
DpResult solve_slot_milp_dp(const Instance& inst, const JobClasses& classes, const Rational& delta,
                            const DpLimits& limits = {});

}  // namespace loadbal
