#pragma once

#include <stdexcept>
#include <string>

namespace splitplan {

// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, out-of-range arguments, violated
// preconditions. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A library invariant failed internally (e.g. the bisection iteration cap
// was hit). The CLI maps these to exit code 3.
class InternalError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonPositiveEntry : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvariantViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CutOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ZeroShareWithNonzeroBody : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyScenario : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TooManyClientsForOracle : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NoSecondCandidate : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace splitplan
