#pragma once

#include <stdexcept>
#include <string>

namespace biharm {

/// Argument outside the mathematical domain of an operation (e.g. alpha > 1/2 for q_min).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Grid too small for the requested stencil.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Hypothesis of an inequality check is not met (inadmissible parameters,
/// residual above threshold, infeasible gamma, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the CLI layer for malformed configurations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace biharm
