#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jt {

/// A function was evaluated at a point where it is undefined (the CI apex).
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroNormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A wave packet does not fit inside the grid with the required margin.
class SupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A time integration produced NaN or infinity.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingChannelError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class FitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Configuration text could not be parsed or validated. `line()` is 0 when
/// the problem is not tied to a particular line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace jt
