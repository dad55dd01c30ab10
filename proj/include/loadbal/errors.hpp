#pragma once

#include <stdexcept>
#include <string>

namespace loadbal {

/// Malformed or invalid user input (instance documents, flags, parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (state budget, enumeration limits) was hit.
/// Never a verdict about the instance.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven invariant failed at runtime. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace loadbal
