#pragma once

#include <stdexcept>
#include <string>

namespace polycol {

// Malformed or inconsistent input (ragged points, empty point sets, bad JSON).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its domain (non-full-dimensional polytope,
// unbalanced polytope for a balanced-only predicate, foreign facet, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal consistency check failed. These indicate a modeling bug or a
// counterexample to an expected mathematical identity and are never caught
// silently.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace polycol
