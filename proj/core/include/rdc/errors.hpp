#pragma once

#include <stdexcept>

namespace rdc {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input: unreadable files, dimension mismatches,
/// violated preconditions. The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown on otherwise well-formed input. Exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NonFinite : public DataError {
 public:
  using DataError::DataError;
};

class NotSymmetric : public DataError {
 public:
  using DataError::DataError;
};

class NotPositiveDefinite : public DataError {
 public:
  using DataError::DataError;
};

class DimensionMismatch : public DataError {
 public:
  using DataError::DataError;
};

class SingularTransform : public DataError {
 public:
  using DataError::DataError;
};

class TooFewForegroundPixels : public DataError {
 public:
  using DataError::DataError;
};

class TooFewSamples : public DataError {
 public:
  using DataError::DataError;
};

/// A training class with a single member has no leave-one-out mean.
class SingletonOwnClass : public DataError {
 public:
  using DataError::DataError;
};

class NoEligibleIdentities : public DataError {
 public:
  using DataError::DataError;
};

class MalformedRankList : public DataError {
 public:
  using DataError::DataError;
};

/// File format violations (PNM headers, matrix text, model files).
class ParseError : public DataError {
 public:
  using DataError::DataError;
};

/// An iterative eigensolver failed to converge or produced an eigenvalue
/// incompatible with a matrix that already passed the Cholesky check.
class EigenFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Regularized covariance still failed the positive-definite check.
class ValidationFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Between-class scatter is numerically zero; LDA has no discriminant.
class DegenerateScatter : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace rdc
