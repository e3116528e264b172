#pragma once

#include <stdexcept>
#include <string>

namespace vpf {

// Bad arguments: out-of-range preference, k outside [1, n], bad index.
// A parking failure is never reported through this; it is a normal Outcome.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A precondition that depends on a prior result was broken, e.g. asking for
// the occupant of spot n after a failed simulation.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Refusal to run a computation whose cost exceeds a configured ceiling.
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace vpf
