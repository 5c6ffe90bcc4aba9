#pragma once

#include <stdexcept>
#include <string>

namespace lanemden {

// Parameter outside the mathematical domain of an operation (exit code 2 in the CLI).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Valid parameters for which this library deliberately provides no algorithm.
class UnsupportedError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// An iterative method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

}  // namespace lanemden
