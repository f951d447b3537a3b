#pragma once

#include <stdexcept>
#include <string>

namespace frach {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma evaluated at (or within tolerance of) a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// h-factorial whose numerator Gamma sits on a pole while the denominator does not.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

class StepMismatchError : public Error {
 public:
  using Error::Error;
};

class TooShortError : public Error {
 public:
  using Error::Error;
};

/// The free constant of an explicit minimizer cannot be fixed by the end condition.
class SingularProblemError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV or JSON input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace frach
