#pragma once

#include <stdexcept>
#include <string>

namespace rmtlens {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point is too close to the support cuts for the square-root branch to be
/// determined.
class BranchAmbiguityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure failed to reach its tolerance. Carries the best
/// estimate that was achieved.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace rmtlens
