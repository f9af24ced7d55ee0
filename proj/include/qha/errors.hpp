#pragma once

#include <stdexcept>
#include <string>

namespace qha {

// Raised when an internal consistency check fails. These indicate a bug in the
// library (or a violated precondition), never bad user input.
struct InvariantViolation : std::logic_error {
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// Raised for malformed user input: presentations, matrices, problem files.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qha
