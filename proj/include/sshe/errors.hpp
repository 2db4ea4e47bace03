#pragma once

#include <stdexcept>
#include <string>

namespace sshe {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  ok = 0,
  usage = 2,
  validation = 3,
  numerical = 4,
  resource = 5,
};

/// Base of every error raised by the library. Each subclass carries the exit
/// code the CLI maps it to.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::usage; }
};

/// Input violates a domain invariant (non-overlapping wells, positive widths, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::validation; }
};

/// Winding number requested for |t_in| == |t_out|: s(k) passes through 0.
class GapClosedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Orbital index outside the basis window, or a pair too far apart.
class WindowError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::numerical; }
};

/// Transfer-matrix entries exceeded the overflow guard.
class StabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fewer band edges than requested below the (doubled) scan ceiling.
class ScanRangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResourceError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::resource; }
};

}  // namespace sshe
