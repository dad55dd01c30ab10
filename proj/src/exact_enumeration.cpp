#include "loadbal/exact_enumeration.hpp"

#include <algorithm>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

bool ExactLimits::admits(const Instance& inst, const JobClasses& classes) const {
  return inst.num_jobs() <= max_jobs && inst.num_machines() <= max_machines &&
         classes.num_classes() <= max_classes && interval_catalog(inst).num_types() <= max_types;
}

SlotProfile TypeGuess::to_profile(const IntervalCatalog& catalog, int classes) const {
  SlotProfile y(catalog.type_of.size(), classes);
  for (std::size_t r = 0; r < per_type.size(); ++r) {
    const auto machines = catalog.machines_of(r);
    std::size_t next = 0;
    for (const auto& [vec, count] : per_type[r]) {
      for (std::size_t c = 0; c < count; ++c) {
        const MachineId i = machines[next++];
        for (int k = 0; k < classes; ++k) y.at(i, k) = vec[k];
      }
    }
  }
  return y;
}

namespace {

using Vec = std::vector<std::int64_t>;

bool same_parity(const Vec& a, const Vec& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if ((a[k] - b[k]) % 2 != 0) return false;
  }
  return true;
}

class GuessEnumerator {
 public:
  GuessEnumerator(const JobClasses& classes, const IntervalCatalog& catalog, const ExactLimits& limits,
                  const std::function<bool(const TypeGuess&)>& visit)
      : catalog_(catalog), limits_(limits), visit_(visit), q_(classes.num_classes()) {
    remaining_.resize(q_);
    for (int k = 0; k < q_; ++k) remaining_[k] = static_cast<std::int64_t>(classes.size(k));
    for (std::size_t r = 0; r < catalog.num_types(); ++r) {
      for (std::size_t c = 0; c < catalog.counts[r]; ++c) slot_type_.push_back(r);
    }
    chosen_.resize(slot_type_.size());
  }

  std::size_t run() {
    place(0);
    return visited_;
  }

 private:
  // Machines are filled type by type; within a type vectors are
  // non-increasing lexicographically so each multiset appears once.
  bool place(std::size_t pos) {
    if (pos == slot_type_.size()) {
      for (auto v : remaining_) {
        if (v != 0) return false;
      }
      ++visited_;
      return visit_(build());
    }
    const bool last = pos + 1 == slot_type_.size();
    Vec vec(q_, 0);
    return choose(pos, 0, last, vec);
  }

  bool choose(std::size_t pos, int k, bool last, Vec& vec) {
    if (k == q_) {
      const std::size_t r = slot_type_[pos];
      if (pos > 0 && slot_type_[pos - 1] == r && vec > chosen_[pos - 1]) return false;
      if (limits_.parity_pruning) {
        for (std::size_t p = pos; p-- > 0 && slot_type_[p] == r;) {
          if (chosen_[p] != vec && same_parity(chosen_[p], vec)) return false;
        }
      }
      chosen_[pos] = vec;
      for (int c = 0; c < q_; ++c) remaining_[c] -= vec[c];
      const bool stop = place(pos + 1);
      for (int c = 0; c < q_; ++c) remaining_[c] += vec[c];
      return stop;
    }
    const std::int64_t hi = remaining_[k];
    const std::int64_t lo = last ? hi : 0;
    for (std::int64_t v = hi; v >= lo; --v) {
      vec[k] = v;
      if (choose(pos, k + 1, last, vec)) return true;
    }
    vec[k] = 0;
    return false;
  }

  TypeGuess build() const {
    TypeGuess g;
    g.per_type.resize(catalog_.num_types());
    for (std::size_t pos = 0; pos < chosen_.size(); ++pos) {
      auto& list = g.per_type[slot_type_[pos]];
      if (!list.empty() && list.back().first == chosen_[pos]) {
        ++list.back().second;
      } else {
        list.emplace_back(chosen_[pos], 1);
      }
    }
    return g;
  }

  const IntervalCatalog& catalog_;
  const ExactLimits& limits_;
  const std::function<bool(const TypeGuess&)>& visit_;
  int q_;
  Vec remaining_;
  std::vector<std::size_t> slot_type_;
  std::vector<Vec> chosen_;
  std::size_t visited_ = 0;
};

// Cheap necessary condition: each machine's load lies between the sums of
// its y smallest and y largest jobs per class.
bool load_range_possible(const Instance& inst, const JobClasses& classes, const SlotProfile& y) {
  for (MachineId i = 0; i < inst.num_machines(); ++i) {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (int k = 0; k < classes.num_classes(); ++k) {
      const auto cnt = static_cast<std::size_t>(y.at(i, k));
      lo += classes.prefix_sum(k, cnt);
      hi += classes.total(k) - classes.prefix_sum(k, classes.size(k) - cnt);
    }
    if (inst.target(i).upper < lo || inst.target(i).lower > hi) return false;
  }
  return true;
}

}  // namespace

std::size_t enumerate_type_guesses(const JobClasses& classes, const IntervalCatalog& catalog,
                                   const ExactLimits& limits,
                                   const std::function<bool(const TypeGuess&)>& visit) {
  GuessEnumerator e(classes, catalog, limits, visit);
  return e.run();
}

LinearFeasibilityProblem build_slot_lp(const Instance& inst, const JobClasses& classes,
                                       const SlotProfile& y) {
  const std::size_t n = inst.num_jobs();
  const std::size_t m = inst.num_machines();
  const int q = classes.num_classes();
  LinearFeasibilityProblem lp;
  lp.num_vars = m * n;
  // Columns of machines without slots for the job's class are left out of
  // every row; the slot rows force them to zero anyway.
  auto usable = [&](MachineId i, JobId j) { return y.at(i, classes.class_of(j)) > 0; };
  for (JobId j = 0; j < n; ++j) {
    LinearRow row{{}, 1};
    for (MachineId i = 0; i < m; ++i) {
      if (usable(i, j)) row.terms.emplace_back(i * n + j, 1);
    }
    lp.equalities.push_back(std::move(row));
  }
  for (MachineId i = 0; i < m; ++i) {
    for (int k = 0; k < q; ++k) {
      LinearRow row{{}, y.at(i, k)};
      if (y.at(i, k) > 0) {
        for (JobId j : classes.members(k)) row.terms.emplace_back(i * n + j, 1);
      }
      lp.equalities.push_back(std::move(row));
    }
  }
  for (MachineId i = 0; i < m; ++i) {
    LinearRow load{{}, 0};
    for (JobId j = 0; j < n; ++j) {
      if (usable(i, j)) load.terms.emplace_back(i * n + j, inst.processing_time(j));
    }
    LinearRow upper = load;
    upper.rhs = inst.target(i).upper;
    load.rhs = inst.target(i).lower;
    lp.at_most.push_back(std::move(upper));
    lp.at_least.push_back(std::move(load));
  }
  return lp;
}

namespace {

void check_limits(const Instance& inst, const JobClasses& classes, const ExactLimits& limits) {
  if (!limits.admits(inst, classes)) {
    throw ResourceLimitError("exact enumeration limits exceeded (n <= " + std::to_string(limits.max_jobs) +
                             ", m <= " + std::to_string(limits.max_machines) +
                             ", q <= " + std::to_string(limits.max_classes) +
                             ", K <= " + std::to_string(limits.max_types) + ")");
  }
}

FractionalAssignment to_assignment(const Instance& inst, const std::vector<Rational>& x) {
  const std::size_t n = inst.num_jobs();
  FractionalAssignment fa(inst.num_machines(), n);
  for (MachineId i = 0; i < inst.num_machines(); ++i) {
    for (JobId j = 0; j < n; ++j) fa.set(i, j, x[i * n + j]);
  }
  return fa;
}

}  // namespace

void for_each_feasible_slot_solution(
    const Instance& inst, const JobClasses& classes, const ExactLimits& limits,
    const std::function<bool(const FractionalAssignment&, const SlotProfile&)>& visit) {
  check_limits(inst, classes, limits);
  const IntervalCatalog catalog = interval_catalog(inst);
  enumerate_type_guesses(classes, catalog, limits, [&](const TypeGuess& guess) {
    const SlotProfile y = guess.to_profile(catalog, classes.num_classes());
    if (!load_range_possible(inst, classes, y)) return false;
    auto x = lp_feasible(build_slot_lp(inst, classes, y));
    if (!x) return false;
    return visit(to_assignment(inst, *x), y);
  });
}

ExactResult solve_slot_milp_exact(const Instance& inst, const JobClasses& classes,
                                  const ExactLimits& limits) {
  check_limits(inst, classes, limits);
  const IntervalCatalog catalog = interval_catalog(inst);
  ExactResult result;
  result.guesses = enumerate_type_guesses(classes, catalog, limits, [&](const TypeGuess& guess) {
    const SlotProfile y = guess.to_profile(catalog, classes.num_classes());
    if (!load_range_possible(inst, classes, y)) return false;
    ++result.lp_solves;
    auto x = lp_feasible(build_slot_lp(inst, classes, y));
    if (!x) return false;
    result.solution.emplace(to_assignment(inst, *x), y);
    return true;
  });
  return result;
}

}  // namespace loadbal
