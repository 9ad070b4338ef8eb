#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace lpns {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter left its admissible interval. Carries the parameter name and
/// the interval in printable form so callers can report it verbatim.
class DomainError : public Error {
 public:
  DomainError(std::string parameter, double value, std::string interval,
              std::string context)
      : Error(context + ": " + parameter + " = " + std::to_string(value) +
              " is outside " + interval),
        parameter_(std::move(parameter)),
        interval_(std::move(interval)),
        value_(value) {}

  const std::string& parameter() const noexcept { return parameter_; }
  const std::string& interval() const noexcept { return interval_; }
  double value() const noexcept { return value_; }

 private:
  std::string parameter_;
  std::string interval_;
  double value_;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A field violated a structural invariant (divergence, mean, finiteness).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A Fourier multiplier produced a non-finite value at a wavevector that
/// carries energy.
class MultiplierError : public Error {
 public:
  explicit MultiplierError(std::array<int, 3> k)
      : Error("multiplier is not finite at k = (" + std::to_string(k[0]) +
              ", " + std::to_string(k[1]) + ", " + std::to_string(k[2]) + ")"),
        k_(k) {}
  std::array<int, 3> wavevector() const noexcept { return k_; }

 private:
  std::array<int, 3> k_;
};

/// Time integration hit NaN/Inf. Records the last state that was still valid.
class NumericalBreakdown : public Error {
 public:
  NumericalBreakdown(double last_time, long last_step)
      : Error("non-finite state after t = " + std::to_string(last_time) +
              " (step " + std::to_string(last_step) + ")"),
        last_time_(last_time),
        last_step_(last_step) {}
  double last_valid_time() const noexcept { return last_time_; }
  long last_valid_step() const noexcept { return last_step_; }

 private:
  double last_time_;
  long last_step_;
};

/// Malformed file or configuration input. `line` is 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace lpns
