#include "loadbal/slot_relaxation.hpp"

#include <algorithm>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

std::int64_t SlotProfile::column_sum(int k) const {
  std::int64_t s = 0;
  for (MachineId i = 0; i < m_; ++i) s += at(i, k);
  return s;
}

Rational FractionalAssignment::get(MachineId i, JobId j) const {
  const auto& row = rows_[i];
  auto it = row.find(j);
  return it == row.end() ? Rational(0) : it->second;
}

void FractionalAssignment::set(MachineId i, JobId j, const Rational& value) {
  if (value == 0) {
    rows_[i].erase(j);
  } else {
    rows_[i][j] = value;
  }
}

std::vector<MachineId> FractionalAssignment::support(JobId j) const {
  std::vector<MachineId> out;
  for (MachineId i = 0; i < rows_.size(); ++i) {
    if (rows_[i].count(j)) out.push_back(i);
  }
  return out;
}

void ConstraintCheck::record(const Rational& violation, const std::string& where) {
  if (violation <= 0) return;
  if (pass) first_failure = where;
  pass = false;
  worst_violation = std::max(worst_violation, violation);
}

std::vector<Rational> fractional_loads(const JobClasses& classes, const FractionalAssignment& x) {
  std::vector<Rational> out(x.num_machines());
  for (MachineId i = 0; i < x.num_machines(); ++i) {
    for (const auto& [j, v] : x.row(i)) out[i] += v * classes.processing_time(j);
  }
  return out;
}

Rational class_volume(const JobClasses& classes, const FractionalAssignment& x, MachineId i, int k) {
  Rational v = 0;
  for (const auto& [j, w] : x.row(i)) {
    if (classes.class_of(j) == k) v += w * classes.processing_time(j);
  }
  return v;
}

FeasibilityReport check_slot_feasible(const Instance& inst, const JobClasses& classes,
                                      const FractionalAssignment& x, const SlotProfile& y,
                                      const Rational& delta) {
  const std::size_t m = inst.num_machines();
  const std::size_t n = inst.num_jobs();
  const int q = classes.num_classes();
  if (x.num_machines() != m || x.num_jobs() != n || y.num_machines() != m ||
      y.num_classes() != q || classes.num_jobs() != n) {
    throw InputError("check_slot_feasible: dimension mismatch");
  }
  FeasibilityReport report;
  std::vector<Rational> column(n);
  std::vector<Rational> slot_mass(m * static_cast<std::size_t>(q));
  for (MachineId i = 0; i < m; ++i) {
    for (const auto& [j, v] : x.row(i)) {
      if (v < 0) report.nonnegative.record(-v, "x(" + std::to_string(i) + "," + std::to_string(j) + ")");
      column[j] += v;
      slot_mass[i * q + classes.class_of(j)] += v;
    }
  }
  for (JobId j = 0; j < n; ++j) {
    report.coverage.record(abs(column[j] - 1), "job " + std::to_string(j));
  }
  for (MachineId i = 0; i < m; ++i) {
    for (int k = 0; k < q; ++k) {
      report.slot_counts.record(abs(slot_mass[i * q + k] - y.at(i, k)),
                                "machine " + std::to_string(i) + " class " + std::to_string(k));
    }
  }
  const Rational slack = delta * inst.p_max();
  const auto loads = fractional_loads(classes, x);
  for (MachineId i = 0; i < m; ++i) {
    const auto& t = inst.target(i);
    report.lower_load.record(t.lower - slack - loads[i], "machine " + std::to_string(i));
    report.upper_load.record(loads[i] - t.upper - slack, "machine " + std::to_string(i));
  }
  return report;
}

AverageSizeVector average_sizes(const JobClasses& classes, const FractionalAssignment& x,
                                const SlotProfile& y) {
  const std::size_t m = y.num_machines();
  const int q = y.num_classes();
  AverageSizeVector z(m, q);
  for (MachineId i = 0; i < m; ++i) {
    std::vector<Rational> mass(q);
    std::vector<Rational> volume(q);
    for (const auto& [j, v] : x.row(i)) {
      const int k = classes.class_of(j);
      mass[k] += v;
      volume[k] += v * classes.processing_time(j);
    }
    for (int k = 0; k < q; ++k) {
      if (mass[k] != y.at(i, k)) {
        throw InputError("average_sizes: slot count mismatch at machine " + std::to_string(i) +
                         ", class " + std::to_string(k));
      }
      if (y.at(i, k) > 0) {
        z.at(i, k) = volume[k] / y.at(i, k);
        z.set_defined(i, k, true);
      }
    }
  }
  return z;
}

std::pair<FractionalAssignment, SlotProfile> average_pair(const Instance& inst,
                                                          const FractionalAssignment& x,
                                                          const SlotProfile& y, MachineId i1,
                                                          MachineId i2) {
  if (i1 == i2) throw InputError("average_pair: machines must differ");
  if (i1 >= y.num_machines() || i2 >= y.num_machines()) {
    throw InputError("average_pair: machine index out of range");
  }
  if (!(inst.target(i1) == inst.target(i2))) {
    throw InputError("average_pair: machines have different target intervals");
  }
  for (int k = 0; k < y.num_classes(); ++k) {
    if ((y.at(i1, k) - y.at(i2, k)) % 2 != 0) {
      throw InputError("average_pair: parity mismatch in class " + std::to_string(k));
    }
  }
  FractionalAssignment x2 = x;
  SlotProfile y2 = y;
  for (JobId j = 0; j < x.num_jobs(); ++j) {
    const Rational avg = (x.get(i1, j) + x.get(i2, j)) / 2;
    x2.set(i1, j, avg);
    x2.set(i2, j, avg);
  }
  for (int k = 0; k < y.num_classes(); ++k) {
    const std::int64_t avg = (y.at(i1, k) + y.at(i2, k)) / 2;
    y2.at(i1, k) = avg;
    y2.at(i2, k) = avg;
  }
  return {std::move(x2), std::move(y2)};
}

namespace {

BigInt squared_norm(const SlotProfile& y, MachineId i) {
  BigInt s = 0;
  for (int k = 0; k < y.num_classes(); ++k) s += BigInt(y.at(i, k)) * y.at(i, k);
  return s;
}

// Sign of (sqrt(a) + sqrt(b)) - (sqrt(c) + sqrt(d)) for non-negative integers.
int compare_root_sums(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  // Square both sides: a + b + 2 sqrt(ab)  vs  c + d + 2 sqrt(cd).
  // Let e = (a + b) - (c + d); compare e + 2 sqrt(ab) with 2 sqrt(cd).
  const BigInt e = (a + b) - (c + d);
  const BigInt ab = a * b;
  const BigInt cd = c * d;
  // Sign of e + 2 sqrt(ab) - 2 sqrt(cd). Write it as e + 2 (sqrt(ab) - sqrt(cd)).
  const int root_sign = ab > cd ? 1 : (ab < cd ? -1 : 0);
  const int e_sign = e > 0 ? 1 : (e < 0 ? -1 : 0);
  if (root_sign == 0) return e_sign;
  if (e_sign == 0) return root_sign;
  if (e_sign == root_sign) return e_sign;
  // Opposite signs: compare |e| with 2 |sqrt(ab) - sqrt(cd)|, i.e.
  // e^2 / 4 vs ab + cd - 2 sqrt(ab cd).  Let f = ab + cd - e^2/4 (times 4 to stay integral):
  // 4 ab + 4 cd - e^2  vs  8 sqrt(ab cd).
  const BigInt lhs = 4 * ab + 4 * cd - e * e;
  const BigInt prod = ab * cd;
  int diff_vs_e;  // sign of 2|sqrt(ab)-sqrt(cd)| - |e|
  if (lhs < 0) {
    diff_vs_e = -1;
  } else {
    const BigInt l2 = lhs * lhs;
    const BigInt r2 = 64 * prod;
    // 2|..| > |e|  <=>  4(ab+cd) - 8 sqrt(abcd) > e^2  <=>  lhs > 8 sqrt(abcd)
    diff_vs_e = l2 > r2 ? 1 : (l2 < r2 ? -1 : 0);
  }
  if (diff_vs_e == 0) return 0;
  return diff_vs_e > 0 ? root_sign : e_sign;
}

}  // namespace

int pair_potential_change(const SlotProfile& before, const SlotProfile& after, MachineId i1,
                          MachineId i2) {
  return compare_root_sums(squared_norm(after, i1), squared_norm(after, i2),
                           squared_norm(before, i1), squared_norm(before, i2));
}

int pair_squared_potential_change(const SlotProfile& before, const SlotProfile& after, MachineId i1,
                                  MachineId i2) {
  const BigInt d = (squared_norm(after, i1) + squared_norm(after, i2)) -
                   (squared_norm(before, i1) + squared_norm(before, i2));
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

const char* to_string(OrderingCondition c) {
  switch (c) {
    case OrderingCondition::MinJobsBound: return "min-jobs-bound";
    case OrderingCondition::ClassVolume: return "class-volume";
    case OrderingCondition::Monotonicity: return "monotonicity";
    case OrderingCondition::MachineBounds: return "machine-bounds";
  }
  return "?";
}

bool OrderingReport::passes(OrderingCondition c) const {
  return std::none_of(failures.begin(), failures.end(),
                      [c](const OrderingFailure& f) { return f.condition == c; });
}

OrderingReport check_ordering_conditions(const Instance& inst, const JobClasses& classes,
                                         const std::vector<MachineId>& order, const SlotProfile& y,
                                         const AverageSizeVector& z, const Rational& delta) {
  const std::size_t m = inst.num_machines();
  const int q = classes.num_classes();
  if (order.size() != m || y.num_machines() != m || y.num_classes() != q || z.machines != m ||
      z.classes != q) {
    throw InputError("check_ordering_conditions: dimension mismatch");
  }
  {
    std::vector<bool> seen(m, false);
    for (MachineId i : order) {
      if (i >= m || seen[i]) throw InputError("check_ordering_conditions: order is not a permutation");
      seen[i] = true;
    }
  }
  OrderingReport report;
  const Rational p_max = inst.p_max();

  for (int k = 0; k < q; ++k) {
    Rational volume = 0;
    std::int64_t count = 0;
    std::optional<Rational> last_defined;
    for (std::size_t t = 0; t < m; ++t) {
      const MachineId i = order[t];
      const std::int64_t yk = y.at(i, k);
      if (yk < 0) throw InputError("check_ordering_conditions: negative slot count");
      count += yk;
      if (count > static_cast<std::int64_t>(classes.size(k))) {
        report.failures.push_back({OrderingCondition::MinJobsBound, k, t, i, Rational(count),
                                   Rational(static_cast<std::int64_t>(classes.size(k)))});
        break;
      }
      if (yk > 0) volume += z.at(i, k) * yk;
      const Rational need = classes.prefix_sum(k, static_cast<std::size_t>(count));
      if (volume < need) {
        report.failures.push_back({OrderingCondition::MinJobsBound, k, t, i, volume, need});
      }
      if (yk > 0) {
        if (last_defined && z.at(i, k) < *last_defined) {
          report.failures.push_back({OrderingCondition::Monotonicity, k, t, i, z.at(i, k), *last_defined});
        }
        last_defined = z.at(i, k);
      }
    }
    const Rational total = classes.total(k);
    const Rational cap = total + delta * p_max / q;
    if (volume < total) {
      report.failures.push_back({OrderingCondition::ClassVolume, k, 0, 0, volume, total});
    } else if (volume > cap) {
      report.failures.push_back({OrderingCondition::ClassVolume, k, 0, 0, volume, cap});
    }
  }
  for (std::size_t t = 0; t < m; ++t) {
    const MachineId i = order[t];
    Rational load = 0;
    for (int k = 0; k < q; ++k) {
      if (y.at(i, k) > 0) load += z.at(i, k) * y.at(i, k);
    }
    const auto& target = inst.target(i);
    if (load < target.lower) {
      report.failures.push_back({OrderingCondition::MachineBounds, -1, t, i, load, target.lower});
    } else if (load > target.upper + delta * p_max) {
      report.failures.push_back({OrderingCondition::MachineBounds, -1, t, i, load, target.upper + delta * p_max});
    }
  }
  return report;
}

}  // namespace loadbal
