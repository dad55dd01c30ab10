#include "loadbal/instance.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

Instance::Instance(std::vector<std::int64_t> jobs, std::vector<TargetInterval> machines)
    : jobs_(std::move(jobs)), machines_(std::move(machines)) {
  if (machines_.empty()) throw InputError("machines: at least one machine is required");
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    if (jobs_[j] < 1) {
      throw InputError("job " + std::to_string(j) + ": processing time must be >= 1");
    }
    p_max_ = std::max(p_max_, jobs_[j]);
    total_ += jobs_[j];
  }
  for (std::size_t i = 0; i < machines_.size(); ++i) {
    if (machines_[i].lower < 0) {
      throw InputError("machine " + std::to_string(i) + ": lower must be >= 0");
    }
    if (machines_[i].lower > machines_[i].upper) {
      throw InputError("machine " + std::to_string(i) + ": lower > upper");
    }
  }
}

Epsilon::Epsilon(int classes) : q(classes) {
  if (q < 1) throw InputError("epsilon: 1/eps must be a positive integer");
}

JobClasses::JobClasses(const Instance& inst, Epsilon eps)
    : q_(eps.q), p_max_(inst.p_max()), p_(inst.jobs().begin(), inst.jobs().end()) {
  if (inst.num_jobs() == 0) throw InputError("empty instance");
  class_of_.resize(p_.size());
  members_.resize(q_);
  for (JobId j = 0; j < p_.size(); ++j) {
    // p_j in ((k-1) p_max/q, k p_max/q]  <=>  k = ceil(p_j q / p_max)
    const std::int64_t scaled = p_[j] * q_;
    const auto k = static_cast<int>((scaled + p_max_ - 1) / p_max_);
    class_of_[j] = k - 1;
    members_[k - 1].push_back(j);
  }
  sizes_.resize(q_);
  prefix_.resize(q_);
  for (int k = 0; k < q_; ++k) {
    auto& ids = members_[k];
    std::sort(ids.begin(), ids.end(), [&](JobId a, JobId b) {
      return p_[a] != p_[b] ? p_[a] < p_[b] : a < b;
    });
    prefix_[k].assign(1, 0);
    for (JobId j : ids) {
      sizes_[k].push_back(p_[j]);
      prefix_[k].push_back(prefix_[k].back() + p_[j]);
    }
  }
}

std::vector<MachineId> IntervalCatalog::machines_of(std::size_t r) const {
  std::vector<MachineId> out;
  for (MachineId i = 0; i < type_of.size(); ++i) {
    if (type_of[i] == r) out.push_back(i);
  }
  return out;
}

IntervalCatalog interval_catalog(const Instance& inst) {
  auto less = [](const TargetInterval& a, const TargetInterval& b) {
    return a.lower != b.lower ? a.lower < b.lower : a.upper < b.upper;
  };
  std::map<TargetInterval, std::size_t, decltype(less)> index(less);
  for (const auto& t : inst.machines()) index.emplace(t, 0);

  IntervalCatalog cat;
  for (auto& [interval, r] : index) {
    r = cat.intervals.size();
    cat.intervals.push_back(interval);
  }
  cat.counts.assign(cat.intervals.size(), 0);
  for (const auto& t : inst.machines()) {
    const std::size_t r = index.at(t);
    cat.type_of.push_back(r);
    ++cat.counts[r];
  }
  return cat;
}

}  // namespace loadbal
