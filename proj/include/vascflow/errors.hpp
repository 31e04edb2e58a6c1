#pragma once

#include <stdexcept>
#include <string>

namespace vascflow {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a closed-form relation (A <= 0, zeta <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Vessel area or volume became non-positive.
class CollapseError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent network, typing or parameter set, detected before time stepping.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Failure during time stepping: supercritical flow, negative area, non-finite state.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed network or waveform file. Carries the offending line (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vascflow
