#include "warpcheck/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace warpcheck {

const char* warp_family_name(WarpFamily f) {
  switch (f) {
    case WarpFamily::Exponential: return "exponential";
    case WarpFamily::CoshType: return "cosh";
    case WarpFamily::Oscillatory: return "oscillatory";
    case WarpFamily::Affine: return "affine";
  }
  return "?";
}

const char* geodesic_status_name(GeodesicStatus s) {
  switch (s) {
    case GeodesicStatus::Completed: return "Completed";
    case GeodesicStatus::BlowUp: return "BlowUp";
    case GeodesicStatus::LeftDomain: return "LeftDomain";
  }
  return "?";
}

namespace {

// exact solution of h'' = k h from (h0, h0')
double exact_linear_ode(double k, double h0, double h0p, double t) {
  if (k > 0.0) {
    double w = std::sqrt(k);
    return h0 * std::cosh(w * t) + h0p / w * std::sinh(w * t);
  }
  if (k < 0.0) {
    double w = std::sqrt(-k);
    return h0 * std::cos(w * t) + h0p / w * std::sin(w * t);
  }
  return h0 + h0p * t;
}

}  // namespace

WarpOdeResult solve_warp_ode(const WarpOdeProblem& prob, const Tolerances& tols) {
  if (!(prob.dt > 0.0)) throw Error("warp ODE needs dt > 0");
  if (!(prob.h0 > 0.0)) throw Error("warp ODE needs h0 > 0");
  if (prob.sigma != 1 && prob.sigma != -1) throw Error("sigma must be +1 or -1");
  if (!std::isfinite(prob.horizon)) throw Error("horizon must be finite");

  const double k = -prob.sigma * prob.a;  // h'' = k h
  const long steps = static_cast<long>(std::ceil(prob.horizon / prob.dt));
  const long stride = std::max(1L, steps / 10000L);

  WarpOdeResult out;
  out.energy0 = prob.sigma * prob.h0_prime * prob.h0_prime + prob.a * prob.h0 * prob.h0;

  double h = prob.h0, hp = prob.h0_prime, t = 0.0;
  out.samples.push_back({0.0, h, hp});

  auto rhs = [k](double y0, double y1, double& d0, double& d1) {
    d0 = y1;
    d1 = k * y0;
  };

  for (long i = 0; i < steps; ++i) {
    double dt = std::min(prob.dt, prob.horizon - t);
    double k1h, k1p, k2h, k2p, k3h, k3p, k4h, k4p;
    rhs(h, hp, k1h, k1p);
    rhs(h + 0.5 * dt * k1h, hp + 0.5 * dt * k1p, k2h, k2p);
    rhs(h + 0.5 * dt * k2h, hp + 0.5 * dt * k2p, k3h, k3p);
    rhs(h + dt * k3h, hp + dt * k3p, k4h, k4p);
    double h_new = h + dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    double hp_new = hp + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    double t_new = t + dt;

    if (h_new <= 0.0) {
      // bracket the crossing by bisection on the exact step map
      double lo = 0.0, hi = dt;
      for (int iter = 0; iter < 60; ++iter) {
        double mid = 0.5 * (lo + hi);
        double hm = exact_linear_ode(k, h, hp, mid);
        (hm <= 0.0 ? hi : lo) = mid;
      }
      double t_zero = t + 0.5 * (lo + hi);
      throw ZeroCrossing("warping function reached zero at t = " + std::to_string(t_zero),
                         t_zero);
    }

    h = h_new;
    hp = hp_new;
    t = t_new;

    double e = prob.sigma * hp * hp + prob.a * h * h;
    out.max_energy_drift = std::max(out.max_energy_drift, std::abs(e - out.energy0));
    double exact = exact_linear_ode(k, prob.h0, prob.h0_prime, t);
    out.max_rel_deviation =
        std::max(out.max_rel_deviation, std::abs(h - exact) / (1.0 + std::abs(exact)));

    if ((i + 1) % stride == 0 || i + 1 == steps) out.samples.push_back({t, h, hp});
  }

  double e_scale = prob.h0_prime * prob.h0_prime + std::abs(prob.a) * prob.h0 * prob.h0;
  if (prob.a == 0.0)
    out.family = WarpFamily::Affine;
  else if (k < 0.0)
    out.family = WarpFamily::Oscillatory;
  else if (std::abs(out.energy0) <= tols.fit * (1.0 + e_scale))
    out.family = WarpFamily::Exponential;
  else
    out.family = WarpFamily::CoshType;

  out.matches_closed_form =
      (out.family == WarpFamily::Exponential || out.family == WarpFamily::CoshType) &&
      out.max_rel_deviation <= tols.fit;
  return out;
}

namespace {

struct OdeFailure {
  enum Kind { None, Domain, Blowup } kind = None;
};

constexpr double kBlowupNorm = 1e8;
constexpr int kMaxHalvings = 30;

}  // namespace

GeodesicResult geodesic(const MetricField& g, const Point& p0, const std::vector<double>& v0,
                        double T, double dt) {
  const int n = g.dim();
  if (static_cast<int>(p0.size()) != n || static_cast<int>(v0.size()) != n)
    throw Error("geodesic initial data has wrong dimension");
  if (!g.domain().contains(p0)) throw DomainViolation("geodesic start outside chart domain", p0);

  GeodesicResult out;
  TangentVector v{v0};
  out.initial_norm_sq = norm_sq(g, v, p0);

  // state y = (x, v); derivative via the geodesic equation
  auto rhs = [&g, n](const std::vector<double>& y, std::vector<double>& dy) {
    Point x(y.begin(), y.begin() + n);
    if (!g.domain().contains(x)) throw DomainViolation("left chart domain", x);
    Christoffel gam = christoffel(g, x);
    for (int i = 0; i < n; ++i) dy[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(n + i)];
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc -= gam(k, i, j) * y[static_cast<std::size_t>(n + i)] * y[static_cast<std::size_t>(n + j)];
      dy[static_cast<std::size_t>(n + k)] = acc;
    }
  };

  std::vector<double> y(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = p0[static_cast<std::size_t>(i)];
    y[static_cast<std::size_t>(n + i)] = v0[static_cast<std::size_t>(i)];
  }

  const long base_steps = static_cast<long>(std::ceil(T / dt));
  const long stride = std::max(1L, base_steps / 10000L);

  auto record = [&](double s) {
    Point x(y.begin(), y.begin() + n);
    std::vector<double> vel(y.begin() + n, y.end());
    double q = 0.0;
    try {
      q = norm_sq(g, TangentVector{vel}, x);
    } catch (const Error&) {
      q = std::numeric_limits<double>::quiet_NaN();
    }
    out.path.push_back({s, std::move(x), std::move(vel), q});
    if (std::isfinite(q))
      out.max_norm_drift = std::max(out.max_norm_drift,
                                    std::abs(q - out.initial_norm_sq) /
                                        (1.0 + std::abs(out.initial_norm_sq)));
  };
  record(0.0);

  double s = 0.0;
  double step = dt;
  int level = 0;
  long recorded = 0;
  std::vector<double> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size()),
      y_new(y.size());

  while (s < T) {
    step = std::min(step, T - s);
    OdeFailure fail;
    try {
      rhs(y, k1);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * step * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * step * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + step * k3[i];
      rhs(tmp, k4);
      for (std::size_t i = 0; i < y.size(); ++i)
        y_new[i] = y[i] + step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

      Point x_new(y_new.begin(), y_new.begin() + n);
      if (!g.domain().contains(x_new)) {
        fail.kind = OdeFailure::Domain;
      } else {
        double norm = 0.0, vel_old = 0.0, vel_new = 0.0;
        for (std::size_t i = 0; i < y_new.size(); ++i) norm = std::max(norm, std::abs(y_new[i]));
        for (int i = 0; i < n; ++i) {
          vel_old = std::max(vel_old, std::abs(y[static_cast<std::size_t>(n + i)]));
          vel_new = std::max(vel_new, std::abs(y_new[static_cast<std::size_t>(n + i)]));
        }
        if (norm > kBlowupNorm) {
          fail.kind = OdeFailure::Blowup;
        } else if (vel_new > 4.0 * (vel_old + 1.0)) {
          fail.kind = OdeFailure::Blowup;  // growing too fast for this step
        }
      }
    } catch (const DomainViolation&) {
      fail.kind = OdeFailure::Domain;
    } catch (const DegenerateMetric&) {
      fail.kind = OdeFailure::Domain;
    } catch (const EvalError&) {
      fail.kind = OdeFailure::Domain;
    }

    if (fail.kind == OdeFailure::None) {
      y = y_new;
      s += step;
      ++recorded;
      if (recorded % stride == 0) record(s);
      if (level > 0 && step < dt) {
        step = std::min(step * 2.0, dt);
        --level;
      }
      continue;
    }

    // check the hard blow-up threshold before halving further
    double vel_now = 0.0;
    for (int i = 0; i < n; ++i)
      vel_now = std::max(vel_now, std::abs(y[static_cast<std::size_t>(n + i)]));
    if (fail.kind == OdeFailure::Blowup && vel_now > kBlowupNorm) {
      out.status = GeodesicStatus::BlowUp;
      out.s_star = s;
      out.s_star_width = step;
      break;
    }

    if (level >= kMaxHalvings) {
      out.status =
          fail.kind == OdeFailure::Domain ? GeodesicStatus::LeftDomain : GeodesicStatus::BlowUp;
      out.s_star = s;
      out.s_star_width = step * 2.0;
      break;
    }
    step *= 0.5;
    ++level;
  }

  out.s_end = s;
  record(s);
  return out;
}

CompletenessEvidence completeness_probe(const WarpedProduct& wp, const SamplingPlan& plan_in,
                                        const Tolerances& tols) {
  const MetricField& base = wp.base();
  const int n = base.dim();
  SamplingPlan plan = plan_in.box.empty() ? base.plan() : plan_in;

  CompletenessEvidence out;

  auto pts = sample_points(plan, [&base](const Point& p) { return base.domain().contains(p); });
  for (const Point& p : pts) {
    SymTensor2 hess = hessian(base, wp.warp(), p);
    out.max_hessian_norm = std::max(out.max_hessian_norm, hess.max_abs());
  }
  out.gradient_parallel = out.max_hessian_norm <= tols.parallel;
  if (!out.gradient_parallel) {
    out.inconclusive = true;
    out.verdict = "inconclusive: grad_B h is not parallel (max |Hess_B h| = " +
                  std::to_string(out.max_hessian_norm) + ")";
    return out;
  }

  // start at the box center; fall back to the first sample with dh != 0
  Point p0(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    p0[static_cast<std::size_t>(i)] =
        0.5 * (plan.box[static_cast<std::size_t>(i)][0] + plan.box[static_cast<std::size_t>(i)][1]);

  auto dh_at = [&](const Point& p) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = wp.warp().derivative(i).eval(p);
    return w;
  };
  std::vector<double> w = dh_at(p0);
  double wmax = 0.0;
  for (double c : w) wmax = std::max(wmax, std::abs(c));
  if (wmax == 0.0) {
    for (const Point& p : pts) {
      w = dh_at(p);
      wmax = 0.0;
      for (double c : w) wmax = std::max(wmax, std::abs(c));
      if (wmax > 0.0) {
        p0 = p;
        break;
      }
    }
  }
  if (wmax == 0.0) {
    out.inconclusive = true;
    out.verdict = "inconclusive: dh vanished at all sampled points";
    return out;
  }

  // v0 = -sgn(w_j) e_j for the strongest component, so h decreases along gamma
  int jbest = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(w[static_cast<std::size_t>(i)]) > std::abs(w[static_cast<std::size_t>(jbest)]))
      jbest = i;
  std::vector<double> v0(static_cast<std::size_t>(n), 0.0);
  v0[static_cast<std::size_t>(jbest)] = w[static_cast<std::size_t>(jbest)] > 0 ? -1.0 : 1.0;

  out.p0 = p0;
  out.v0 = v0;
  out.dh_v0 = w[static_cast<std::size_t>(jbest)] * v0[static_cast<std::size_t>(jbest)];

  double h0 = wp.warp().eval(p0);
  out.t0 = -h0 / out.dh_v0;

  // integrate the base geodesic most of the way to t0 and fit the affine law
  // h(gamma(t)) = h0 + t dh(v0); the fit's zero is the integrated estimate
  double t_max = 0.999 * out.t0;
  GeodesicResult traj = geodesic(base, p0, v0, t_max, out.t0 / 4000.0);
  double sum_t = 0.0, sum_tt = 0.0, sum_h = 0.0, sum_th = 0.0;
  std::size_t count = 0;
  double max_affine_res = 0.0;
  for (const auto& sample : traj.path) {
    double hv = wp.warp().eval(sample.position);
    sum_t += sample.s;
    sum_tt += sample.s * sample.s;
    sum_h += hv;
    sum_th += sample.s * hv;
    ++count;
    max_affine_res = std::max(max_affine_res, std::abs(hv - (h0 + sample.s * out.dh_v0)));
  }
  double denom = static_cast<double>(count) * sum_tt - sum_t * sum_t;
  double slope = (static_cast<double>(count) * sum_th - sum_t * sum_h) / denom;
  double inter = (sum_h - slope * sum_t) / static_cast<double>(count);
  out.t0_integrated = -inter / slope;
  out.h_residual = max_affine_res;

  // metric degeneration as h -> 0: unscaled |det| of the product metric
  const auto& last = traj.path.back();
  Point near_zero = last.position;
  Point q_center(static_cast<std::size_t>(wp.fiber_dim()));
  for (int a = 0; a < wp.fiber_dim(); ++a)
    q_center[static_cast<std::size_t>(a)] =
        0.5 * (wp.fiber().sample_box()[static_cast<std::size_t>(a)][0] +
               wp.fiber().sample_box()[static_cast<std::size_t>(a)][1]);
  Point prod_pt = near_zero;
  prod_pt.insert(prod_pt.end(), q_center.begin(), q_center.end());
  double h_near = wp.warp().eval(near_zero);
  double det = 1.0;
  // block determinant: det(g_B) * det(h^2 g_F)
  {
    auto md_b = metric_at(base, near_zero);
    auto md_f = metric_at(wp.fiber(), q_center);
    double det_b = 1.0, det_f = 1.0;
    // scaled_det is after row normalization; recover raw scale crudely from
    // the component magnitudes
    det_b = md_b.scaled_det;
    for (int i = 0; i < n; ++i) {
      double r = 0.0;
      for (int j = 0; j < n; ++j) r = std::max(r, std::abs(md_b.g(i, j)));
      det_b *= r;
    }
    det_f = md_f.scaled_det;
    for (int a = 0; a < wp.fiber_dim(); ++a) {
      double r = 0.0;
      for (int b = 0; b < wp.fiber_dim(); ++b) r = std::max(r, std::abs(md_f.g(a, b)));
      det_f *= r;
    }
    det = det_b * std::pow(h_near * h_near, wp.fiber_dim()) * det_f;
  }
  out.product_det_near_zero = std::abs(det);

  out.verdict = "consistent with incompleteness: warping function vanishes at finite affine "
                "parameter t0 = " +
                std::to_string(out.t0);
  return out;
}

}  // namespace warpcheck
