#pragma once

#include <stdexcept>
#include <string>

namespace fraclap {

/// Caller violated a documented precondition (bad parameters, domain, metadata).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Riesz-type integral was requested for a source that does not decay fast enough.
class DivergenceError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Adaptive quadrature ran out of its evaluation budget.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cross-check between independent evaluators failed.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fraclap
