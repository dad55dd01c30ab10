#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "loadbal/rational.hpp"

namespace loadbal {

using JobId = std::size_t;
using MachineId = std::size_t;

struct TargetInterval {
  Rational lower;
  Rational upper;

  friend bool operator==(const TargetInterval&, const TargetInterval&) = default;
};

/// Jobs with positive integer processing times and one target load interval
/// per machine. Immutable once validated.
class Instance {
 public:
  /// Validates and builds. Throws InputError naming the offending index.
  Instance(std::vector<std::int64_t> jobs, std::vector<TargetInterval> machines);

  std::size_t num_jobs() const { return jobs_.size(); }
  std::size_t num_machines() const { return machines_.size(); }
  std::span<const std::int64_t> jobs() const { return jobs_; }
  std::span<const TargetInterval> machines() const { return machines_; }
  std::int64_t processing_time(JobId j) const { return jobs_[j]; }
  const TargetInterval& target(MachineId i) const { return machines_[i]; }

  /// Largest processing time; 0 for an empty job list.
  std::int64_t p_max() const { return p_max_; }
  std::int64_t total_processing() const { return total_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::int64_t> jobs_;
  std::vector<TargetInterval> machines_;
  std::int64_t p_max_ = 0;
  std::int64_t total_ = 0;
};

/// Accuracy parameter restricted to unit fractions: eps = 1/q.
struct Epsilon {
  int q = 1;

  explicit Epsilon(int classes);
  Rational value() const { return Rational(1, q); }
};

/// Partition of the jobs into size bands ((k-1) p_max/q, k p_max/q], k = 1..q.
/// Classes are 0-based in code.
class JobClasses {
 public:
  /// Throws InputError("empty instance") when the instance has no jobs.
  JobClasses(const Instance& inst, Epsilon eps);

  int num_classes() const { return q_; }
  std::int64_t p_max() const { return p_max_; }
  std::size_t num_jobs() const { return class_of_.size(); }

  /// Job ids of class k sorted by (processing time, id).
  std::span<const JobId> members(int k) const { return members_[k]; }
  std::span<const std::int64_t> sorted_sizes(int k) const { return sizes_[k]; }
  std::size_t size(int k) const { return members_[k].size(); }
  int class_of(JobId j) const { return class_of_[j]; }
  std::int64_t processing_time(JobId j) const { return p_[j]; }

  /// Sum of the `count` smallest processing times in class k.
  std::int64_t prefix_sum(int k, std::size_t count) const { return prefix_[k][count]; }
  std::int64_t total(int k) const { return prefix_[k].back(); }

  /// Class band upper edge k p_max / q (class index 0-based).
  Rational band_upper(int k) const { return Rational(static_cast<std::int64_t>(k + 1) * p_max_, q_); }

 private:
  int q_;
  std::int64_t p_max_;
  std::vector<std::int64_t> p_;
  std::vector<int> class_of_;
  std::vector<std::vector<JobId>> members_;
  std::vector<std::vector<std::int64_t>> sizes_;
  std::vector<std::vector<std::int64_t>> prefix_;
};

/// Distinct target intervals in (lower, upper) order.
struct IntervalCatalog {
  std::vector<TargetInterval> intervals;
  std::vector<std::size_t> counts;        ///< machines per interval type
  std::vector<std::size_t> type_of;       ///< machine -> interval type

  std::size_t num_types() const { return intervals.size(); }
  /// Machines of type r in increasing index order.
  std::vector<MachineId> machines_of(std::size_t r) const;
};

IntervalCatalog interval_catalog(const Instance& inst);

}  // namespace loadbal
