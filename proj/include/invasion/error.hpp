#pragma once

#include <stdexcept>
#include <string>

namespace invasion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter, grid, function spec or scenario violates its contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text. The message carries the line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Iterative solve did not reach its residual target within the iteration cap.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A step produced a non-finite value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Too few usable samples for a fit or estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Steady-state classification refused: residual above tolerance.
class NotSteadyError : public Error {
 public:
  using Error::Error;
};

/// Steady-state classification: neither analytic family matches.
class AmbiguousStateError : public Error {
 public:
  using Error::Error;
};

/// Two runs cannot be compared sample by sample.
class ScheduleMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace invasion
