#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace warpcheck {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Source text could not be parsed. `offset` is the byte position of the
/// offending token in the input string.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t off)
      : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
  std::size_t offset;
};

/// Evaluation produced a non-finite value or hit an undefined point
/// (log of a non-positive number, sign at zero, division by zero, ...).
struct EvalError : Error {
  using Error::Error;
};

/// A point violated a chart's domain predicate, or a warping function
/// failed to be positive at a sampled point.
struct DomainViolation : Error {
  DomainViolation(const std::string& msg, std::vector<double> p = {})
      : Error(msg), point(std::move(p)) {}
  std::vector<double> point;
};

/// Metric determinant (after row scaling) fell below the degeneracy threshold.
struct DegenerateMetric : Error {
  DegenerateMetric(const std::string& msg, std::vector<double> p = {})
      : Error(msg), point(std::move(p)) {}
  std::vector<double> point;
};

/// The potential function is not of the form beta + h*phi on this warped
/// product: the mixed-compatibility residual exceeded tolerance.
struct NonDecomposable : Error {
  using Error::Error;
};

/// A base-only checker was handed an expression that depends on fiber
/// coordinates.
struct FiberDependence : Error {
  using Error::Error;
};

/// The warping function is constant; the characterization theorems assume a
/// non-trivial warp.
struct TrivialWarp : Error {
  using Error::Error;
};

/// grad_B h is not lightlike on the sampled set.
struct NotImproper : Error {
  using Error::Error;
};

/// The metric failed the Einstein-condition verification.
struct NotEinstein : Error {
  using Error::Error;
};

/// The Hessian of the candidate potential is not pointwise proportional to
/// the metric.
struct NotConformal : Error {
  using Error::Error;
};

/// The requested quadric is empty for the given signature.
struct EmptyQuadric : Error {
  using Error::Error;
};

/// Run configuration failed validation (maps to process exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// h(t) reached zero inside the integration horizon of the warp ODE.
struct ZeroCrossing : Error {
  ZeroCrossing(const std::string& msg, double t_zero) : Error(msg), t(t_zero) {}
  double t;
};

}  // namespace warpcheck
