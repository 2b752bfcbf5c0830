#pragma once

#include <stdexcept>
#include <string>

namespace ising {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndexOutOfTable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotAntisymmetric : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InsufficientData : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure: the inputs were valid but the computation broke down.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Quadrature point cap reached before the tolerance was met.
class NonConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Singular values of a skew matrix failed to pair up.
class PairingFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Ground state is not unique within the requested tolerance.
class DegenerateGroundState : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace ising
