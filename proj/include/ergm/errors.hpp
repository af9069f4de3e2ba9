#pragma once

#include <stdexcept>
#include <string>

namespace ergm {

// Bad user input: malformed motif strings, out-of-range parameters, bad
// config values. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input exceeds one of the documented size caps (motif order, node count,
// graphon refinement).
class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A value outside the mathematical domain of a function, e.g. entropy_I(1.5).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A motif that does not satisfy a hypothesis required by the computation
// (chi(H) >= 3 for the multipartite ansatz, k >= 2 edges for H2).
class HypothesisError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Results that contradict each other; the CLI maps these to exit code 3.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ergm
