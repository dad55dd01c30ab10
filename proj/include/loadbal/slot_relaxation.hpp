#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/rational.hpp"

namespace loadbal {

/// Integer slot counts y(i, k): machine i holds y(i, k) slots for class k.
class SlotProfile {
 public:
  SlotProfile() = default;
  SlotProfile(std::size_t machines, int classes)
      : m_(machines), q_(classes), y_(machines * static_cast<std::size_t>(classes), 0) {}

  std::size_t num_machines() const { return m_; }
  int num_classes() const { return q_; }
  std::int64_t& at(MachineId i, int k) { return y_[i * q_ + k]; }
  std::int64_t at(MachineId i, int k) const { return y_[i * q_ + k]; }
  std::vector<std::int64_t> row(MachineId i) const {
    return {y_.begin() + static_cast<std::ptrdiff_t>(i * q_),
            y_.begin() + static_cast<std::ptrdiff_t>((i + 1) * q_)};
  }
  std::int64_t column_sum(int k) const;

  friend bool operator==(const SlotProfile&, const SlotProfile&) = default;

 private:
  std::size_t m_ = 0;
  int q_ = 0;
  std::vector<std::int64_t> y_;
};

/// Sparse m x n matrix of rationals; absent entries are zero.
class FractionalAssignment {
 public:
  FractionalAssignment() = default;
  FractionalAssignment(std::size_t machines, std::size_t jobs) : n_(jobs), rows_(machines) {}

  std::size_t num_machines() const { return rows_.size(); }
  std::size_t num_jobs() const { return n_; }
  Rational get(MachineId i, JobId j) const;
  void set(MachineId i, JobId j, const Rational& value);
  void add(MachineId i, JobId j, const Rational& delta) { set(i, j, get(i, j) + delta); }
  const std::map<JobId, Rational>& row(MachineId i) const { return rows_[i]; }

  /// Machines carrying positive mass of job j.
  std::vector<MachineId> support(JobId j) const;

  friend bool operator==(const FractionalAssignment&, const FractionalAssignment&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::map<JobId, Rational>> rows_;
};

/// Average class sizes z(i, k); undefined (free) where y(i, k) = 0.
struct AverageSizeVector {
  std::size_t machines = 0;
  int classes = 0;
  std::vector<Rational> z;
  std::vector<bool> defined;

  AverageSizeVector() = default;
  AverageSizeVector(std::size_t m, int q)
      : machines(m), classes(q), z(m * static_cast<std::size_t>(q)), defined(m * static_cast<std::size_t>(q), false) {}

  Rational& at(MachineId i, int k) { return z[i * classes + k]; }
  const Rational& at(MachineId i, int k) const { return z[i * classes + k]; }
  bool is_defined(MachineId i, int k) const { return defined[i * classes + k]; }
  void set_defined(MachineId i, int k, bool value) { defined[i * classes + k] = value; }
};

struct ConstraintCheck {
  bool pass = true;
  Rational worst_violation = 0;   ///< largest amount by which the constraint is missed
  std::string first_failure;      ///< human-readable location of the first failure

  void record(const Rational& violation, const std::string& where);
};

struct FeasibilityReport {
  ConstraintCheck coverage;       ///< sum_i x(i,j) = 1
  ConstraintCheck slot_counts;    ///< sum_{j in J_k} x(i,j) = y(i,k)
  ConstraintCheck lower_load;
  ConstraintCheck upper_load;
  ConstraintCheck nonnegative;

  bool feasible() const {
    return coverage.pass && slot_counts.pass && lower_load.pass && upper_load.pass && nonnegative.pass;
  }
};

/// Checks (x, y) against the slot relaxation with load bounds widened by
/// delta * p_max on both sides. delta = 0 checks the relaxation exactly.
FeasibilityReport check_slot_feasible(const Instance& inst, const JobClasses& classes,
                                      const FractionalAssignment& x, const SlotProfile& y,
                                      const Rational& delta);

/// Per-machine load sum_j p_j x(i, j).
std::vector<Rational> fractional_loads(const JobClasses& classes, const FractionalAssignment& x);

/// Class volume sum_{j in J_k} p_j x(i, j).
Rational class_volume(const JobClasses& classes, const FractionalAssignment& x, MachineId i, int k);

AverageSizeVector average_sizes(const JobClasses& classes, const FractionalAssignment& x,
                                const SlotProfile& y);

/// Replaces rows i1 and i2 of (x, y) by their average. Requires identical
/// target intervals and componentwise equal parity of y rows.
std::pair<FractionalAssignment, SlotProfile> average_pair(const Instance& inst,
                                                          const FractionalAssignment& x,
                                                          const SlotProfile& y, MachineId i1,
                                                          MachineId i2);

/// Sign of the change of sum_i ||y_i||_2 when going from `before` to `after`
/// where only rows i1 and i2 differ: -1 decrease, 0 equal, +1 increase.
/// Compared exactly via squared norms.
/// Strict only when the two rows are not parallel; distinct parallel rows
/// keep the sum of norms unchanged.
int pair_potential_change(const SlotProfile& before, const SlotProfile& after, MachineId i1,
                          MachineId i2);

/// Same comparison for sum_i ||y_i||_2^2, which drops strictly whenever the
/// two rows differ.
int pair_squared_potential_change(const SlotProfile& before, const SlotProfile& after, MachineId i1,
                                  MachineId i2);

enum class OrderingCondition {
  MinJobsBound,     ///< prefix volume covers the smallest jobs
  ClassVolume,      ///< class total within [sum p, sum p + delta p_max / q]
  Monotonicity,     ///< z non-decreasing along the ordering (defined entries)
  MachineBounds,    ///< l_i <= sum_k y z <= u_i + delta p_max
};

const char* to_string(OrderingCondition c);

struct OrderingFailure {
  OrderingCondition condition;
  int job_class = -1;
  std::size_t position = 0;   ///< index into the ordering (or 0 when not applicable)
  MachineId machine = 0;
  Rational lhs;
  Rational rhs;
};

struct OrderingReport {
  std::vector<OrderingFailure> failures;

  bool ok() const { return failures.empty(); }
  bool passes(OrderingCondition c) const;
};

/// Verifies the ordering conditions that make (order, y, z) reconstructible
/// into a fractional assignment. `order[t]` is the machine at position t.
OrderingReport check_ordering_conditions(const Instance& inst, const JobClasses& classes,
                                         const std::vector<MachineId>& order, const SlotProfile& y,
                                         const AverageSizeVector& z, const Rational& delta);

}  // namespace loadbal
