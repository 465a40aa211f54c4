#pragma once

#include <stdexcept>
#include <string>

namespace gcpv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix that should be positive definite failed to factorize.
class CholeskyFailure : public Error {
 public:
  using Error::Error;
};

/// Vector arguments that must share a length do not.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A requested value lies outside the function's range (e.g. sigma below the warp floor).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// An operation requires a converged fit but the fit did not converge.
class NotConverged : public Error {
 public:
  using Error::Error;
};

/// Defensive cap on slice-sampling bracket shrinks was hit; indicates a defect.
class ShrinkExhausted : public Error {
 public:
  using Error::Error;
};

/// Input file could not be parsed; message carries row/column context.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A price column contained a value <= 0, so log returns are undefined.
class NonPositivePrice : public Error {
 public:
  using Error::Error;
};

/// Rolling window longer than the series.
class WindowTooLarge : public Error {
 public:
  using Error::Error;
};

/// Training data unusable (e.g. all observations zero).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// A maximum-likelihood fit could not improve on its initialization.
class FitFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace gcpv
