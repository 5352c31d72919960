#pragma once

#include <stdexcept>
#include <string>

namespace gjs {

/// Input violates a mathematical precondition (non-positive spectrum,
/// singular operator, parameter out of range). Carries the offending
/// scalar when one exists.
class DomainViolation : public std::runtime_error {
 public:
  explicit DomainViolation(const std::string& what, double offending = 0.0)
      : std::runtime_error(what), offending_(offending) {}
  double offending() const { return offending_; }

 private:
  double offending_;
};

/// A measure is not equivalent to the base at the working truncation
/// (I - S fails strict positivity).
class NotEquivalent : public DomainViolation {
 public:
  using DomainViolation::DomainViolation;
};

/// The iterative eigensolver failed to converge.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration: bad problem file, inconsistent dimensions,
/// empty grids.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gjs
