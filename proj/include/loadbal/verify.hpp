#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "loadbal/instance.hpp"
#include "loadbal/rational.hpp"

namespace loadbal {

struct MachineCheck {
  MachineId machine = 0;
  Rational load;
  Rational lower;   ///< l - band
  Rational upper;   ///< u + band
  bool ok = true;
};

struct VerifyReport {
  Rational band;
  std::vector<MachineCheck> machines;
  std::vector<std::string> errors;   ///< structural problems and violations

  bool pass() const { return errors.empty(); }
};

/// Recomputes loads from the job -> machine map and checks every machine
/// against [l - (eps + delta) p_max, u + (eps + delta) p_max]. Reported
/// loads, when given, must match the recomputation.
VerifyReport verify_assignment(const Instance& inst, const std::vector<std::size_t>& assignment,
                               const std::vector<Rational>& reported_loads, const Rational& eps,
                               const Rational& delta);

}  // namespace loadbal
