#include "loadbal/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

void check_size(std::size_t n, const OracleOptions& options) {
  if (n > options.max_jobs) {
    throw ResourceLimitError("oracle limit exceeded: n = " + std::to_string(n) + " > " +
                             std::to_string(options.max_jobs));
  }
}

std::vector<JobId> descending_order(std::span<const std::int64_t> jobs) {
  std::vector<JobId> order(jobs.size());
  std::iota(order.begin(), order.end(), JobId{0});
  std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) { return jobs[a] > jobs[b]; });
  return order;
}

class TargetSearch {
 public:
  TargetSearch(const Instance& inst, const OracleOptions& options)
      : inst_(inst), options_(options), order_(descending_order(inst.jobs())) {
    const IntervalCatalog catalog = interval_catalog(inst);
    type_ = catalog.type_of;
    for (const auto& t : inst.machines()) {
      lo_.push_back(to_int64(ceil_div(t.lower)));
      hi_.push_back(to_int64(floor_div(t.upper)));
    }
    load_.assign(inst.num_machines(), 0);
    assign_.assign(inst.num_jobs(), 0);
    remaining_.assign(order_.size() + 1, 0);
    for (std::size_t t = order_.size(); t-- > 0;) remaining_[t] = remaining_[t + 1] + inst.processing_time(order_[t]);
  }

  std::optional<std::vector<MachineId>> run() {
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (lo_[i] > hi_[i]) return std::nullopt;
    }
    if (search(0)) return assign_;
    return std::nullopt;
  }

 private:
  bool search(std::size_t t) {
    std::int64_t deficit = 0;
    for (std::size_t i = 0; i < load_.size(); ++i) deficit += std::max<std::int64_t>(0, lo_[i] - load_[i]);
    if (deficit > remaining_[t]) return false;
    if (t == order_.size()) return true;
    std::vector<std::int64_t> key;
    if (options_.symmetry_pruning) {
      key = canonical(t);
      if (failed_.count(key)) return false;
    }
    const JobId j = order_[t];
    const std::int64_t p = inst_.processing_time(j);
    for (std::size_t i = 0; i < load_.size(); ++i) {
      if (load_[i] + p > hi_[i]) continue;
      if (options_.symmetry_pruning && equivalent_earlier(i)) continue;
      load_[i] += p;
      assign_[j] = i;
      const bool ok = search(t + 1);
      load_[i] -= p;
      if (ok) return true;
    }
    if (options_.symmetry_pruning) failed_.insert(std::move(key));
    return false;
  }

  bool equivalent_earlier(std::size_t i) const {
    for (std::size_t e = 0; e < i; ++e) {
      if (type_[e] == type_[i] && load_[e] == load_[i]) return true;
    }
    return false;
  }

  std::vector<std::int64_t> canonical(std::size_t t) const {
    std::vector<std::pair<std::size_t, std::int64_t>> v;
    for (std::size_t i = 0; i < load_.size(); ++i) v.emplace_back(type_[i], load_[i]);
    std::sort(v.begin(), v.end());
    std::vector<std::int64_t> key{static_cast<std::int64_t>(t)};
    for (const auto& [r, l] : v) {
      key.push_back(static_cast<std::int64_t>(r));
      key.push_back(l);
    }
    return key;
  }

  const Instance& inst_;
  const OracleOptions& options_;
  std::vector<JobId> order_;
  std::vector<std::size_t> type_;
  std::vector<std::int64_t> lo_, hi_, load_, remaining_;
  std::vector<MachineId> assign_;
  std::set<std::vector<std::int64_t>> failed_;
};

class OptSearch {
 public:
  OptSearch(const std::vector<std::int64_t>& jobs, std::size_t m, Objective o, bool pruning)
      : o_(o), pruning_(pruning), loads_(m, 0) {
    for (JobId j : descending_order(jobs)) sizes_.push_back(jobs[j]);
  }

  std::int64_t run() { return best(0); }

 private:
  std::int64_t best(std::size_t t) {
    if (t == sizes_.size()) return objective_value(o_, loads_);
    std::vector<std::int64_t> key;
    if (pruning_) {
      key = loads_;
      std::sort(key.begin(), key.end());
      key.push_back(static_cast<std::int64_t>(t));
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    std::optional<std::int64_t> result;
    for (std::size_t i = 0; i < loads_.size(); ++i) {
      if (pruning_ && std::find(loads_.begin(), loads_.begin() + static_cast<std::ptrdiff_t>(i), loads_[i]) !=
                          loads_.begin() + static_cast<std::ptrdiff_t>(i)) {
        continue;
      }
      loads_[i] += sizes_[t];
      const std::int64_t v = best(t + 1);
      loads_[i] -= sizes_[t];
      if (!result || !at_least_as_good(o_, *result, v)) result = v;
    }
    if (pruning_) memo_.emplace(std::move(key), *result);
    return *result;
  }

  Objective o_;
  bool pruning_;
  std::vector<std::int64_t> sizes_;
  std::vector<std::int64_t> loads_;
  std::map<std::vector<std::int64_t>, std::int64_t> memo_;
};

}  // namespace

std::optional<std::vector<MachineId>> brute_force_target(const Instance& inst, const OracleOptions& options) {
  check_size(inst.num_jobs(), options);
  TargetSearch s(inst, options);
  return s.run();
}

std::int64_t brute_force_opt(const std::vector<std::int64_t>& jobs, std::size_t machines, Objective objective,
                             const OracleOptions& options) {
  check_size(jobs.size(), options);
  if (objective == Objective::Target) throw InputError("brute_force_opt needs a value objective");
  if (machines == 0) throw InputError("machines: at least one machine is required");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j] < 1) throw InputError("job " + std::to_string(j) + ": processing time must be >= 1");
  }
  OptSearch s(jobs, machines, objective, options.symmetry_pruning);
  return s.run();
}

}  // namespace loadbal
