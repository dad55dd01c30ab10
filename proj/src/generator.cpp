#include "loadbal/generator.hpp"

#include <algorithm>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = span == 0 ? 0 : std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r = rng();
  while (span != 0 && r >= limit) r = rng();
  return lo + static_cast<std::int64_t>(span == 0 ? r : r % span);
}

namespace {

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[k]);
  }
}

std::vector<std::int64_t> planted_jobs(const GeneratorOptions& o, std::mt19937_64& rng) {
  if (o.n % o.m != 0) throw InputError("planted balance needs n divisible by m");
  const std::size_t c = o.n / o.m;
  std::vector<std::int64_t> jobs;
  std::int64_t target = 0;
  for (std::size_t j = 0; j < c; ++j) {
    jobs.push_back(uniform_int(rng, 1, o.pmax));
    target += jobs.back();
  }
  for (std::size_t g = 1; g < o.m; ++g) {
    // start from all ones and hand out the remaining units one at a time
    std::vector<std::int64_t> group(c, 1);
    std::int64_t extra = target - static_cast<std::int64_t>(c);
    while (extra > 0) {
      const auto k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(c) - 1));
      if (group[k] < o.pmax) {
        ++group[k];
        --extra;
      }
    }
    jobs.insert(jobs.end(), group.begin(), group.end());
  }
  shuffle(jobs, rng);
  return jobs;
}

}  // namespace

Instance generate_instance(const GeneratorOptions& o) {
  if (o.n == 0) throw InputError("n must be >= 1");
  if (o.m == 0) throw InputError("m must be >= 1");
  if (o.pmax < 1) throw InputError("pmax must be >= 1");
  if (o.k_intervals == 0 || o.k_intervals > o.m) throw InputError("k-intervals must lie in [1, m]");
  if (o.planted_balance && o.k_intervals != 1) throw InputError("planted balance uses a single interval");
  std::mt19937_64 rng(o.seed);

  std::vector<std::int64_t> jobs;
  if (o.planted_balance) {
    jobs = planted_jobs(o, rng);
  } else {
    for (std::size_t j = 0; j < o.n; ++j) jobs.push_back(uniform_int(rng, 1, o.pmax));
  }
  std::int64_t total = 0;
  for (auto p : jobs) total += p;

  if (o.style != Objective::Target || o.planted_balance) {
    return Instance(jobs, std::vector<TargetInterval>(o.m, TargetInterval{0, total}));
  }

  std::vector<std::int64_t> loads(o.m, 0);
  for (auto p : jobs) loads[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(o.m) - 1))] += p;
  std::vector<std::size_t> type(o.m);
  for (std::size_t i = 0; i < o.m; ++i) type[i] = i % o.k_intervals;
  shuffle(type, rng);
  std::vector<TargetInterval> per_type(o.k_intervals);
  for (std::size_t r = 0; r < o.k_intervals; ++r) {
    std::int64_t lo = -1, hi = 0;
    for (std::size_t i = 0; i < o.m; ++i) {
      if (type[i] != r) continue;
      lo = lo < 0 ? loads[i] : std::min(lo, loads[i]);
      hi = std::max(hi, loads[i]);
    }
    const std::int64_t widen_lo = uniform_int(rng, 0, o.pmax / 2);
    const std::int64_t widen_hi = uniform_int(rng, 0, o.pmax / 2) + static_cast<std::int64_t>(r);
    per_type[r] = {std::max<std::int64_t>(0, lo - widen_lo), hi + widen_hi};
  }
  std::vector<TargetInterval> machines;
  for (std::size_t i = 0; i < o.m; ++i) machines.push_back(per_type[type[i]]);
  return Instance(std::move(jobs), std::move(machines));
}

}  // namespace loadbal
