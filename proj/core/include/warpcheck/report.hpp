#pragma once

#include <map>
#include <string>
#include <vector>

#include "warpcheck/tensor.hpp"

namespace warpcheck {

/// Per-equation residual track. Residuals are reported in absolute terms; a
/// point passes when |residual| <= tol * (1 + scale), where scale is the
/// largest magnitude among the terms entering the equation at that point.
class ResidualLine {
 public:
  ResidualLine() = default;
  ResidualLine(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

  void record(double abs_residual, double scale, const Point& p) {
    if (abs_residual > tol_ * (1.0 + scale)) pass_ = false;
    if (abs_residual > max_residual_) {
      max_residual_ = abs_residual;
      scale_at_max_ = scale;
      argmax_ = p;
    }
  }

  const std::string& name() const { return name_; }
  double tol() const { return tol_; }
  double max_residual() const { return max_residual_; }
  double scale_at_max() const { return scale_at_max_; }
  const Point& argmax_point() const { return argmax_; }
  bool pass() const { return pass_; }

 private:
  std::string name_;
  double tol_ = 0.0;
  double max_residual_ = 0.0;
  double scale_at_max_ = 0.0;
  Point argmax_;
  bool pass_ = true;
};

/// Aggregate result of one checker invocation.
struct CheckReport {
  bool pass = true;
  double max_residual = 0.0;
  Point argmax_point;
  std::vector<ResidualLine> lines;
  std::map<std::string, double> derived;  // constants recovered from the data

  void finish() {
    pass = true;
    max_residual = 0.0;
    for (const ResidualLine& l : lines) {
      if (!l.pass()) pass = false;
      if (l.max_residual() > max_residual) {
        max_residual = l.max_residual();
        argmax_point = l.argmax_point();
      }
    }
  }
};

/// Named tolerances used across the checkers; all overridable from a run
/// configuration.
struct Tolerances {
  double residual = 1e-6;         // normalized system residuals
  double cross_validation = 1e-7; // closed form vs direct chart
  double mixed_block = 1e-8;
  double reconstruction = 1e-8;   // f - (beta + h phi)
  double decompose_mixed = 1e-7;  // d_x d_y (f/h)
  double sc = 1e-8;               // conformal-field residual
  double bochner = 1e-6;
  double lightlike = 1e-9;
  double parallel = 1e-9;         // Hess h = 0 in improper/probe tests
  double einstein = 1e-6;
  double energy_drift = 1e-8;
  double geodesic_drift = 1e-6;
  double fit = 1e-6;              // ODE closed-form fit
};

}  // namespace warpcheck
