#pragma once

#include <stdexcept>
#include <string>

namespace mellin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the caller's input does not hold (bad shape, coefficient
/// outside the domain, contour violating its constraints, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Integral parameters for which the integral itself diverges.
class DivergentParameters : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A Gamma argument sits on (or within tolerance of) a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The requested quantity is not representable as a double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An iteration or refinement loop failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Contour truncation could not bring the tail below the tolerance.
class TruncationError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Two root branches collided while continuing from the roots of unity.
class ContinuationError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Finite-difference step so small that roundoff dominates truncation.
class StepTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace mellin
