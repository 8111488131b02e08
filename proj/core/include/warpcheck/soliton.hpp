#pragma once

#include <optional>
#include <variant>

#include "warpcheck/warped.hpp"

namespace warpcheck {

/// Metric g, potential f and soliton function lambda of the fundamental
/// equation Ric + Hess f = lambda g. When the metric is a warped product the
/// closed-form Ricci/Hessian assembly is the authoritative evaluation path;
/// the direct chart computation serves as an independent oracle in tests.
struct SolitonData {
  std::variant<MetricField, WarpedProduct> metric;
  Expr f;
  Expr lambda;

  const MetricField& chart() const {
    if (const auto* wp = std::get_if<WarpedProduct>(&metric)) return wp->product();
    return std::get<MetricField>(metric);
  }
  const WarpedProduct* warped() const { return std::get_if<WarpedProduct>(&metric); }
};

/// Split f = beta + h*phi, gauge-fixed by phi(q0) = 0. The split is unique
/// only up to (beta, phi) -> (beta + k h, phi - k); checkers re-derive the
/// entangled constant b from the data, so verdicts are gauge-independent.
struct PotentialSplit {
  Expr beta;  // over base coordinates
  Expr phi;   // over fiber coordinates
  Point q0;   // fiber anchor
};

/// a, b, c and a0 of the characterization systems. b entries are advisory:
/// the fiber-dependent checker re-derives the effective b.
struct StructureConstants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double a0 = 0.0;
};

/// c, b of the conformal-field equation Hess phi + (c phi + b) g = 0.
struct ConformalSpec {
  double c = 0.0;
  double b = 0.0;
};

/// Ric + Hess f - lambda g at p.
SymTensor2 soliton_residual(const SolitonData& s, const Point& p);

/// Max-norm sweep of the soliton residual over sampled points.
CheckReport soliton_check(const SolitonData& s, const SamplingPlan& plan = {},
                          const Tolerances& tols = {});

/// Split f into beta + h*phi. Throws NonDecomposable when the separability
/// residual d_x d_y (f/h) exceeds tolerance at a sampled point, which means f
/// cannot be the potential of any soliton on this warped product.
PotentialSplit decompose_potential(const WarpedProduct& wp, const Expr& f, const Point& q0,
                                   const Point& p0, const SamplingPlan& plan = {},
                                   const Tolerances& tols = {});

/// Fiber-dependent characterization: the four-equation system, the lambda
/// formula and the constant-energy relation. Throws TrivialWarp when h is
/// constant.
CheckReport check_fiber_dependent(const WarpedProduct& wp, const PotentialSplit& split,
                                  const StructureConstants& k, const Expr& lambda,
                                  const SamplingPlan& plan = {}, const Tolerances& tols = {});

/// Base-only characterization (f and lambda constant on the fiber). Throws
/// FiberDependence if either expression involves fiber coordinates.
CheckReport check_base_only(const WarpedProduct& wp, const Expr& f, const Expr& lambda, double c,
                            const SamplingPlan& plan = {}, const Tolerances& tols = {});

/// Improper case: grad_B h lightlike (NotImproper otherwise) and parallel,
/// Ricci-flat fiber, Hess_F phi + b g_F = 0, lambda = ((grad_B h)beta - b)/h
/// and Ric_B + Hess_B beta = lambda g_B. Requires base dimension >= 2.
CheckReport check_improper(const WarpedProduct& wp, const PotentialSplit& split, double b,
                           const Expr& lambda, const SamplingPlan& plan = {},
                           const Tolerances& tols = {});

/// Hess phi + (c phi + b) g at p.
SymTensor2 sc_residual(const MetricField& g, const Expr& phi, const ConformalSpec& spec,
                       const Point& p);

struct ConformalConstantsResult {
  double a0 = 0.0;
  double max_deviation = 0.0;  // of psi(p) against a f(p) + a0
  CheckReport details;
};

/// On an Einstein chart with Ric = a (dim-1) g, fit the proportionality
/// factor of Hess f = -psi g against a*f + a0. Throws NotEinstein or
/// NotConformal when the hypotheses fail at a sampled point.
ConformalConstantsResult recover_conformal_constants(const MetricField& g, const Expr& f, double a,
                                                     const SamplingPlan& plan = {},
                                                     const Tolerances& tols = {});

}  // namespace warpcheck
