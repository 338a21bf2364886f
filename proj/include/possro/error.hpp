#pragma once

#include <stdexcept>
#include <string>

namespace possro {

/// Argument outside the mathematical domain of an operation (e.g. a
/// possibility level outside [0, 1] or mismatched dimensions).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The nominal problem is infeasible or unbounded, so X is not a nonempty
/// bounded set (or a model is infeasible where the theory says it cannot be).
class AssumptionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The LP engine hit its iteration limit before reaching a verdict.
class IterationLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace possro
