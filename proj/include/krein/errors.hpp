#pragma once

#include <stdexcept>
#include <string>

namespace krein {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failures: factorization breakdown, non-convergence, bracketing.
/// The CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(std::size_t pivot_index, double pivot)
      : NumericalError("matrix is not positive definite: pivot " +
                       std::to_string(pivot_index) + " = " +
                       std::to_string(pivot)),
        pivot_index_(pivot_index),
        pivot_(pivot) {}

  std::size_t pivot_index() const noexcept { return pivot_index_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_index_;
  double pivot_;
};

class BreakdownError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketingFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MinimizationAtBoundary : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid inputs: bad domains, impossible bases, malformed configuration.
/// The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DerivativeTooHigh : public ValidationError {
 public:
  DerivativeTooHigh(int requested, int degree)
      : ValidationError("derivative order " + std::to_string(requested) +
                        " exceeds spline degree " + std::to_string(degree)) {}
};

class EmptyBasis : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace krein
