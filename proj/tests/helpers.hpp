#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "loadbal/generator.hpp"
#include "loadbal/instance.hpp"

namespace testutil {

using loadbal::Instance;
using loadbal::Rational;
using loadbal::TargetInterval;

inline Instance uniform(std::vector<std::int64_t> jobs, std::size_t m, Rational lo, Rational hi) {
  return Instance(std::move(jobs), std::vector<TargetInterval>(m, TargetInterval{lo, hi}));
}

inline std::vector<std::int64_t> random_jobs(std::mt19937_64& rng, std::size_t n, std::int64_t pmax) {
  std::vector<std::int64_t> jobs(n);
  for (auto& p : jobs) p = loadbal::uniform_int(rng, 1, pmax);
  return jobs;
}

/// Random instance with up to two interval types; intervals are random
/// around the average load, so both feasible and infeasible cases occur.
inline Instance random_target(std::mt19937_64& rng, std::size_t max_n, std::size_t max_m, std::int64_t pmax) {
  const auto n = static_cast<std::size_t>(loadbal::uniform_int(rng, 1, static_cast<std::int64_t>(max_n)));
  const auto m = static_cast<std::size_t>(loadbal::uniform_int(rng, 1, static_cast<std::int64_t>(max_m)));
  auto jobs = random_jobs(rng, n, pmax);
  std::int64_t total = 0;
  for (auto p : jobs) total += p;
  TargetInterval types[2];
  for (auto& t : types) {
    const Rational avg(total, static_cast<std::int64_t>(m));
    Rational lo = avg - Rational(loadbal::uniform_int(rng, 0, 2 * pmax), 2);
    if (lo < 0) lo = 0;
    const Rational hi = lo + Rational(loadbal::uniform_int(rng, 0, 2 * pmax), 2);
    t = {lo, hi};
  }
  std::vector<TargetInterval> machines;
  for (std::size_t i = 0; i < m; ++i) machines.push_back(types[loadbal::uniform_int(rng, 0, 1)]);
  return Instance(std::move(jobs), std::move(machines));
}

}  // namespace testutil
