#pragma once

#include <stdexcept>
#include <string>

namespace coulomb {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidQuantumNumbers : public Error {
 public:
  using Error::Error;
};

/// Division by zero in exact arithmetic (e.g. a Laurent polynomial evaluated at 0).
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested value is not representable as a double. Callers can fall
/// back to the scaled or extended-precision evaluators.
class OverflowSignal : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class StepSizeTooCoarse : public Error {
 public:
  using Error::Error;
};

}  // namespace coulomb
