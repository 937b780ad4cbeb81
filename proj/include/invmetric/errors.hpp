#pragma once

#include <stdexcept>
#include <string>

namespace invmetric {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Caller-side contract violation: bad input, point outside a domain, malformed
/// geometry. The CLI maps these to exit code 1.
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

/// Nearest boundary point is not unique (outside the tubular neighborhood).
class AmbiguityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
  const char* kind() const noexcept override { return "ambiguity"; }
};

/// Numerical breakdown: vanishing denominators, non-convergence, inverted
/// brackets. The CLI maps these to exit code 2.
class NumericError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numeric"; }
};

class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "pole"; }
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
  const char* kind() const noexcept override { return "convergence"; }
};

}  // namespace invmetric
