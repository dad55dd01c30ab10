#include "loadbal/verify.hpp"

namespace loadbal {

VerifyReport verify_assignment(const Instance& inst, const std::vector<std::size_t>& assignment,
                               const std::vector<Rational>& reported_loads, const Rational& eps,
                               const Rational& delta) {
  VerifyReport r;
  r.band = (eps + delta) * inst.p_max();
  if (assignment.size() != inst.num_jobs()) {
    r.errors.push_back("assignment covers " + std::to_string(assignment.size()) + " jobs, instance has " +
                       std::to_string(inst.num_jobs()));
    return r;
  }
  std::vector<Rational> loads(inst.num_machines(), Rational(0));
  for (JobId j = 0; j < assignment.size(); ++j) {
    if (assignment[j] >= inst.num_machines()) {
      r.errors.push_back("job " + std::to_string(j) + ": machine index " + std::to_string(assignment[j]) +
                         " out of range");
      return r;
    }
    loads[assignment[j]] += inst.processing_time(j);
  }
  if (!reported_loads.empty() && reported_loads.size() != loads.size()) {
    r.errors.push_back("loads: expected " + std::to_string(loads.size()) + " entries");
  }
  for (MachineId i = 0; i < inst.num_machines(); ++i) {
    MachineCheck c{i, loads[i], inst.target(i).lower - r.band, inst.target(i).upper + r.band, true};
    c.ok = c.lower <= c.load && c.load <= c.upper;
    if (!c.ok) {
      r.errors.push_back("machine " + std::to_string(i) + ": load " + to_string(c.load) + " outside [" +
                         to_string(c.lower) + ", " + to_string(c.upper) + "]");
    }
    if (i < reported_loads.size() && reported_loads.size() == loads.size() && reported_loads[i] != loads[i]) {
      r.errors.push_back("machine " + std::to_string(i) + ": reported load " + to_string(reported_loads[i]) +
                         " but assignment gives " + to_string(loads[i]));
    }
    r.machines.push_back(std::move(c));
  }
  return r;
}

}  // namespace loadbal
