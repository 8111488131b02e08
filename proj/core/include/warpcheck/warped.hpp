#pragma once

#include "warpcheck/geometry.hpp"
#include "warpcheck/metric.hpp"
#include "warpcheck/report.hpp"

namespace warpcheck {

/// Warped product B x_h F: block metric g_B + h^2 g_F on the concatenated
/// chart, with h a positive function of the base coordinates only.
class WarpedProduct {
 public:
  WarpedProduct() = default;

  /// Validates that coordinate names are disjoint, that h references base
  /// coordinates only, and that h > 0 at sampled base points.
  static WarpedProduct create(MetricField base, MetricField fiber, Expr h);

  bool valid() const { return product_.valid(); }
  const MetricField& base() const { return base_; }
  const MetricField& fiber() const { return fiber_; }
  const Expr& warp() const { return h_; }
  const MetricField& product() const { return product_; }

  int base_dim() const { return base_.dim(); }
  int fiber_dim() const { return fiber_.dim(); }

  Point base_point(const Point& p) const {
    return Point(p.begin(), p.begin() + base_dim());
  }
  Point fiber_point(const Point& p) const {
    return Point(p.begin() + base_dim(), p.end());
  }

  /// Lift an expression over fiber coordinates to the product chart.
  Expr lift_fiber(const Expr& e) const;

  SamplingPlan plan(std::uint64_t seed = 42, int count = 100) const {
    return product_.plan(seed, count);
  }

 private:
  MetricField base_;
  MetricField fiber_;
  Expr h_;
  MetricField product_;
};

/// The (n+m)-dimensional block metric g_B + h^2 g_F. Throws DomainViolation
/// when h fails to be positive at a sampled base point.
MetricField product_metric(const WarpedProduct& wp);

/// Closed-form warped Ricci tensor at a product point:
///   base block  Ric_B - (m/h) Hess_B h,
///   mixed block 0,
///   fiber block Ric_F - [h Lap_B h + (m-1)|grad_B h|^2] g_F.
SymTensor2 warped_ricci(const WarpedProduct& wp, const Point& p);

/// Closed-form warped Hessian of f (a function on the product chart):
///   base block  Hess_B f,
///   mixed block d_x d_y f - h^{-1} d_x h d_y f,
///   fiber block Hess_F f + h g_B(grad_B h, grad_B f) g_F.
SymTensor2 warped_hessian(const WarpedProduct& wp, const Expr& f, const Point& p);

/// Residual check of the Einstein condition with normalized constant a
/// (Ric = a (n+m-1) g) and fiber constant c (Ric_F = c (m-1) g_F). For a
/// one-dimensional base with constant g_tt the equivalent ODE conditions
/// h'' + a g_tt h = 0 and g^tt (h')^2 + a h^2 = c are evaluated instead.
CheckReport einstein_check(const WarpedProduct& wp, double a, double c,
                           const SamplingPlan& plan = {}, const Tolerances& tols = {});

}  // namespace warpcheck
