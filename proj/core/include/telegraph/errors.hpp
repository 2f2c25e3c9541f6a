#pragma once

#include <stdexcept>
#include <string>

namespace telegraph {

// Base of all library errors. Two families below map to the CLI exit codes:
// ValidationError -> 1 (bad input), NumericalError -> 2 (computation failed).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class NonPositiveParameter : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class AlphaOutOfRange : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NonPositiveHorizon : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class TimeOutOfRange : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NonPositiveTime : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidInterval : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class OutOfSupport : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class UnstableRegime : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InsufficientLevels : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ExplosionGuardTripped : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class OptimizationFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace telegraph
