#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperdiam {

// Invalid user-supplied parameters (CLI exit code 2).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The (t, d, c, n) combination falls outside the critical regime (exit code 2).
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the offending 1-based line number (exit code 3).
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Problem size exceeds a hard cap (exit code 4).
struct FeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejection sampling cannot realize the requested conditional law (exit code 4).
struct InfeasibleConditioningError : FeasibilityError {
  using FeasibilityError::FeasibilityError;
};

}  // namespace hyperdiam
