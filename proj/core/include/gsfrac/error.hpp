#pragma once

#include <stdexcept>
#include <string>

namespace gsfrac {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf produced by a time step.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A monitor reported a hard violation and the run was configured to abort.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Config text could not be parsed or validated. `line()` is 0 when the
/// problem is not tied to a specific line.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Malformed or truncated file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace gsfrac
