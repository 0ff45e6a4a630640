#pragma once

#include <stdexcept>
#include <string>

namespace adelent {

// Bad input text or an argument outside an operation's domain. The CLI maps
// this to exit status 2.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation could not produce a trustworthy answer (torsion collision,
// non-convergence, work guard, failed internal cross-check). Exit status 1.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations that are not parse problems.
class DomainError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace adelent
