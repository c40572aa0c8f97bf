#pragma once

#include <stdexcept>
#include <string>

namespace aniso {

// Argument outside the domain of a function, e.g. evaluating off [0,1].
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation called on an input that violates its stated precondition
// (negative function where nonnegativity is required, wrong boundary
// orientation, level equal to a critical value, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// No admissible candidate: the weighted denominator cannot be made positive.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold by construction was violated numerically.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aniso
