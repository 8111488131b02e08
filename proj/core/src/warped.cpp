#include "warpcheck/warped.hpp"

#include <algorithm>
#include <cmath>

namespace warpcheck {

namespace {

std::vector<int> fiber_lift_map(int n, int m) {
  std::vector<int> map(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) map[static_cast<std::size_t>(i)] = n + i;
  return map;
}

}  // namespace

Expr WarpedProduct::lift_fiber(const Expr& e) const {
  return e.reindex(fiber_lift_map(base_dim(), fiber_dim()), product_.coords());
}

WarpedProduct WarpedProduct::create(MetricField base, MetricField fiber, Expr h) {
  const int n = base.dim();
  const int m = fiber.dim();

  for (const std::string& bc : base.coords())
    for (const std::string& fc : fiber.coords())
      if (bc == fc) throw Error("base and fiber share the coordinate name '" + bc + "'");

  if (h.max_var_index() >= n)
    throw Error("warping function references a fiber coordinate");

  // h > 0 over the base sampling box
  for (const Point& p : sample_points(base.plan(), [&base](const Point& q) {
         return base.domain().contains(q);
       })) {
    double v = h.eval(p);
    if (!(v > 0.0))
      throw DomainViolation("warping function not positive (h = " + std::to_string(v) +
                                ") at sampled base point",
                            p);
  }

  std::vector<std::string> coords = base.coords();
  coords.insert(coords.end(), fiber.coords().begin(), fiber.coords().end());

  const int N = n + m;
  std::vector<Expr> upper(static_cast<std::size_t>(N) * (N + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      upper[MetricField::tri_index(N, i, j)] = base.component(i, j);

  auto lift = fiber_lift_map(n, m);
  Expr h_sq = Expr::mul(h, h);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      upper[MetricField::tri_index(N, n + a, n + b)] =
          Expr::mul(h_sq, fiber.component(a, b).reindex(lift, coords));

  DomainPredicate dom = base.domain().product_with(fiber.domain(), n, coords);
  std::vector<std::array<double, 2>> box = base.sample_box();
  box.insert(box.end(), fiber.sample_box().begin(), fiber.sample_box().end());

  std::string label = base.label() + " x_h " + fiber.label();

  WarpedProduct wp;
  wp.base_ = std::move(base);
  wp.fiber_ = std::move(fiber);
  wp.h_ = std::move(h);
  wp.product_ = MetricField::create(std::move(coords), std::move(upper), std::move(dom),
                                    std::move(label), std::move(box));
  verify_nondegenerate(wp.product_, wp.product_.plan());
  return wp;
}

MetricField product_metric(const WarpedProduct& wp) { return wp.product(); }

SymTensor2 warped_ricci(const WarpedProduct& wp, const Point& p) {
  const int n = wp.base_dim();
  const int m = wp.fiber_dim();
  Point pb = wp.base_point(p);
  Point pf = wp.fiber_point(p);

  double h = wp.warp().eval(pb);
  if (!(h > 0.0)) throw DomainViolation("warping function not positive at point", p);

  SymTensor2 ric_b = ricci(wp.base(), pb);
  SymTensor2 hess_h = hessian(wp.base(), wp.warp(), pb);
  double lap_h = laplacian(wp.base(), wp.warp(), pb);
  TangentVector grad_h = gradient(wp.base(), wp.warp(), pb);
  double grad_h_sq = norm_sq(wp.base(), grad_h, pb);

  SymTensor2 ric_f = ricci(wp.fiber(), pf);
  SymTensor2 g_f = metric_at(wp.fiber(), pf).g;

  SymTensor2 out(n + m);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out.at(i, j) = ric_b(i, j) - (m / h) * hess_h(i, j);
  double fiber_factor = h * lap_h + (m - 1) * grad_h_sq;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      out.at(n + a, n + b) = ric_f(a, b) - fiber_factor * g_f(a, b);
  // mixed block is identically zero in the closed form
  return out;
}

SymTensor2 warped_hessian(const WarpedProduct& wp, const Expr& f, const Point& p) {
  const int n = wp.base_dim();
  const int m = wp.fiber_dim();
  Point pb = wp.base_point(p);
  Point pf = wp.fiber_point(p);

  double h = wp.warp().eval(pb);
  if (!(h > 0.0)) throw DomainViolation("warping function not positive at point", p);

  std::vector<Expr> df(static_cast<std::size_t>(n + m));
  std::vector<double> dfv(static_cast<std::size_t>(n + m));
  for (int i = 0; i < n + m; ++i) {
    df[static_cast<std::size_t>(i)] = f.derivative(i);
    dfv[static_cast<std::size_t>(i)] = df[static_cast<std::size_t>(i)].eval(p);
  }

  Christoffel gam_b = christoffel(wp.base(), pb);
  Christoffel gam_f = christoffel(wp.fiber(), pf);

  std::vector<double> dh(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dh[static_cast<std::size_t>(i)] = wp.warp().derivative(i).eval(pb);

  SymTensor2 out(n + m);

  // base block: base-metric Hessian applied slicewise in the fiber variables
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = df[static_cast<std::size_t>(i)].derivative(j).eval(p);
      for (int k = 0; k < n; ++k) v -= gam_b(k, i, j) * dfv[static_cast<std::size_t>(k)];
      out.at(i, j) = v;
    }

  // mixed block: d_x d_y f - h^{-1} d_x h d_y f
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a)
      out.at(i, n + a) = df[static_cast<std::size_t>(i)].derivative(n + a).eval(p) -
                         dh[static_cast<std::size_t>(i)] * dfv[static_cast<std::size_t>(n + a)] / h;

  // fiber block: Hess_F f + h g_B(grad_B h, grad_B f) g_F
  auto md_b = metric_at(wp.base(), pb);
  double grad_h_dot_f = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      grad_h_dot_f +=
          md_b.g_inv(i, j) * dh[static_cast<std::size_t>(i)] * dfv[static_cast<std::size_t>(j)];
  SymTensor2 g_f = metric_at(wp.fiber(), pf).g;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      double v = df[static_cast<std::size_t>(n + a)].derivative(n + b).eval(p);
      for (int c = 0; c < m; ++c) v -= gam_f(c, a, b) * dfv[static_cast<std::size_t>(n + c)];
      out.at(n + a, n + b) = v + h * grad_h_dot_f * g_f(a, b);
    }

  return out;
}

CheckReport einstein_check(const WarpedProduct& wp, double a, double c,
                           const SamplingPlan& plan_in, const Tolerances& tols) {
  const int n = wp.base_dim();
  const int m = wp.fiber_dim();
  SamplingPlan plan = plan_in.box.empty() ? wp.plan() : plan_in;

  CheckReport rep;
  const bool ode_form = (n == 1) && wp.base().d_component(0, 0, 0).is_constant() &&
                        wp.base().d_component(0, 0, 0).constant_value() == 0.0;

  if (ode_form) {
    rep.lines.emplace_back("warp ODE h'' + a g_tt h = 0", tols.einstein);
    rep.lines.emplace_back("energy relation g^tt (h')^2 + a h^2 = c", tols.einstein);
  } else {
    rep.lines.emplace_back("base equation Ric_B - (m/h) Hess_B h = a (m+n-1) g_B", tols.einstein);
    rep.lines.emplace_back("scalar equation h Lap h + (m-1)|grad h|^2 + a (m+n-1) h^2 = c (m-1)",
                           tols.einstein);
  }
  rep.lines.emplace_back("fiber Einstein Ric_F = c (m-1) g_F", tols.einstein);

  const MetricField& product = wp.product();
  auto pts =
      sample_points(plan, [&product](const Point& p) { return product.domain().contains(p); });

  Expr dh_dt = ode_form ? wp.warp().derivative(0) : Expr();
  Expr d2h_dt2 = ode_form ? dh_dt.derivative(0) : Expr();

  for (const Point& p : pts) {
    Point pb = wp.base_point(p);
    Point pf = wp.fiber_point(p);
    double h = wp.warp().eval(pb);
    if (!(h > 0.0)) throw DomainViolation("warping function not positive at sampled point", p);

    if (ode_form) {
      double gtt = wp.base().component(0, 0).eval(pb);
      double hp = dh_dt.eval(pb);
      double hpp = d2h_dt2.eval(pb);
      rep.lines[0].record(std::abs(hpp + a * gtt * h),
                          std::max(std::abs(hpp), std::abs(a * gtt * h)), p);
      double e = hp * hp / gtt + a * h * h;
      rep.lines[1].record(std::abs(e - c),
                          std::max({std::abs(hp * hp / gtt), std::abs(a * h * h), std::abs(c)}),
                          p);
    } else {
      SymTensor2 ric_b = ricci(wp.base(), pb);
      SymTensor2 hess_h = hessian(wp.base(), wp.warp(), pb);
      SymTensor2 g_b = metric_at(wp.base(), pb).g;
      SymTensor2 lhs = ric_b - (static_cast<double>(m) / h) * hess_h;
      SymTensor2 rhs = a * (m + n - 1) * g_b;
      rep.lines[0].record((lhs - rhs).max_abs(), std::max(lhs.max_abs(), rhs.max_abs()), p);

      double lap_h = laplacian(wp.base(), wp.warp(), pb);
      TangentVector grad_h = gradient(wp.base(), wp.warp(), pb);
      double gh2 = norm_sq(wp.base(), grad_h, pb);
      double lhs2 = h * lap_h + (m - 1) * gh2 + a * (m + n - 1) * h * h;
      double rhs2 = c * (m - 1);
      rep.lines[1].record(std::abs(lhs2 - rhs2),
                          std::max({std::abs(h * lap_h), std::abs((m - 1) * gh2),
                                    std::abs(a * (m + n - 1) * h * h), std::abs(rhs2)}),
                          p);
    }

    SymTensor2 ric_f = ricci(wp.fiber(), pf);
    SymTensor2 g_f = metric_at(wp.fiber(), pf).g;
    SymTensor2 want = c * (m - 1) * g_f;
    rep.lines[2].record((ric_f - want).max_abs(), std::max(ric_f.max_abs(), want.max_abs()), p);
  }

  rep.finish();
  return rep;
}

}  // namespace warpcheck
