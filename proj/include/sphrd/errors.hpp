#pragma once

#include <stdexcept>
#include <string>

namespace sphrd {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method (continued fraction, series, root finder, quadrature)
/// did not reach its tolerance within the configured caps.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  /// Best error estimate reached before giving up; NaN when unknown.
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace sphrd
