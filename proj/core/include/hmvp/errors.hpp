#pragma once

#include <stdexcept>
#include <string>

namespace hmvp {

/// Bad arguments, malformed descriptors, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite evaluations, non-convergence, degenerate linear systems.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hmvp
