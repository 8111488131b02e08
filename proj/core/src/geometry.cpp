#include "warpcheck/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace warpcheck {

namespace {

constexpr double kDegeneracyTol = 1e-12;

Eigen::MatrixXd eval_components(const MetricField& g, const Point& p) {
  const int n = g.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = g.component(i, j).eval(p);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

double row_scaled_det(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd s = m;
  for (int i = 0; i < n; ++i) {
    double r = m.row(i).cwiseAbs().maxCoeff();
    if (r == 0.0) return 0.0;
    s.row(i) /= r;
  }
  return s.determinant();
}

void require_in_domain(const MetricField& g, const Point& p) {
  if (!g.domain().contains(p))
    throw DomainViolation("point outside chart domain of '" + g.label() + "'", p);
}

}  // namespace

MetricPointData metric_at(const MetricField& g, const Point& p) {
  require_in_domain(g, p);
  const int n = g.dim();
  Eigen::MatrixXd m = eval_components(g, p);

  double sdet = row_scaled_det(m);
  if (std::abs(sdet) < kDegeneracyTol)
    throw DegenerateMetric("metric degenerate (scaled |det| = " + std::to_string(std::abs(sdet)) +
                               ") at sampled point",
                           p);

  Eigen::MatrixXd inv = m.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  int negatives = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()[i] < 0.0) ++negatives;

  MetricPointData out;
  out.g = SymTensor2(n);
  out.g_inv = SymTensor2(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      out.g.at(i, j) = m(i, j);
      out.g_inv.at(i, j) = 0.5 * (inv(i, j) + inv(j, i));
    }
  out.signature = Signature{n, negatives};
  out.scaled_det = sdet;
  return out;
}

Christoffel christoffel(const MetricField& g, const Point& p) {
  require_in_domain(g, p);
  const int n = g.dim();
  // guard against a degenerate chart point before touching g^{kl}
  Eigen::MatrixXd m = eval_components(g, p);
  if (std::abs(row_scaled_det(m)) < kDegeneracyTol)
    throw DegenerateMetric("metric degenerate at point", p);

  Christoffel out(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        out.at(k, i, j) = g.christoffel_expr(k, i, j).eval(p);
  return out;
}

namespace {

// d_m Gamma^k_ij at p: symbolic unless the Christoffel ASTs exceed the
// configured depth limit, then central differences with step 1e-4*(1+|p_m|).
double d_gamma_at(const MetricField& g, const Point& p, int m, int k, int i, int j,
                  bool use_fd) {
  if (!use_fd) return g.d_christoffel_expr(m, k, i, j).eval(p);
  double h = 1e-4 * (1.0 + std::abs(p[static_cast<std::size_t>(m)]));
  Point hi = p, lo = p;
  hi[static_cast<std::size_t>(m)] += h;
  lo[static_cast<std::size_t>(m)] -= h;
  return (g.christoffel_expr(k, i, j).eval(hi) - g.christoffel_expr(k, i, j).eval(lo)) /
         (2.0 * h);
}

bool fd_fallback(const MetricField& g) {
  int limit = g.symbolic_depth_limit();
  return limit > 0 && g.christoffel_depth() > limit;
}

}  // namespace

std::vector<std::vector<double>> ricci_full(const MetricField& g, const Point& p) {
  const int n = g.dim();
  Christoffel gam = christoffel(g, p);
  const bool fd = fd_fallback(g);

  std::vector<std::vector<double>> r(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) {
        v += d_gamma_at(g, p, k, k, i, j, fd);
        v -= d_gamma_at(g, p, i, k, k, j, fd);
      }
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          v += gam(k, k, l) * gam(l, i, j) - gam(k, i, l) * gam(l, k, j);
      r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  return r;
}

SymTensor2 ricci(const MetricField& g, const Point& p) {
  const int n = g.dim();
  auto r = ricci_full(g, p);
  SymTensor2 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out.at(i, j) = 0.5 * (r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                            r[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  return out;
}

std::vector<std::vector<std::vector<std::vector<double>>>> riemann(const MetricField& g,
                                                                   const Point& p) {
  const int n = g.dim();
  Christoffel gam = christoffel(g, p);
  const bool fd = fd_fallback(g);

  using V1 = std::vector<double>;
  using V2 = std::vector<V1>;
  using V3 = std::vector<V2>;
  std::vector<V3> r(static_cast<std::size_t>(n),
                    V3(static_cast<std::size_t>(n),
                       V2(static_cast<std::size_t>(n), V1(static_cast<std::size_t>(n), 0.0))));

  // R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
  //             + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = d_gamma_at(g, p, i, l, j, k, fd) - d_gamma_at(g, p, j, l, i, k, fd);
          for (int m = 0; m < n; ++m)
            v += gam(l, i, m) * gam(m, j, k) - gam(l, j, m) * gam(m, i, k);
          r[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
           [static_cast<std::size_t>(j)] = v;
        }
  return r;
}

TangentVector gradient(const MetricField& g, const Expr& f, const Point& p) {
  const int n = g.dim();
  MetricPointData md = metric_at(g, p);
  std::vector<double> df(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) df[static_cast<std::size_t>(i)] = f.derivative(i).eval(p);

  TangentVector v;
  v.components.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      v.components[static_cast<std::size_t>(i)] += md.g_inv(i, j) * df[static_cast<std::size_t>(j)];
  return v;
}

double norm_sq(const MetricField& g, const TangentVector& v, const Point& p) {
  const int n = g.dim();
  MetricPointData md = metric_at(g, p);
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += md.g(i, j) * v.components[static_cast<std::size_t>(i)] *
           v.components[static_cast<std::size_t>(j)];
  return s;
}

CausalCharacter causal_character(const MetricField& g, const TangentVector& v, const Point& p) {
  return classify_causal(norm_sq(g, v, p), v.euclid_norm_sq());
}

SymTensor2 hessian(const MetricField& g, const Expr& f, const Point& p) {
  const int n = g.dim();
  Christoffel gam = christoffel(g, p);
  std::vector<double> df(static_cast<std::size_t>(n));
  std::vector<Expr> dfe(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    dfe[static_cast<std::size_t>(i)] = f.derivative(i);
    df[static_cast<std::size_t>(i)] = dfe[static_cast<std::size_t>(i)].eval(p);
  }
  SymTensor2 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = dfe[static_cast<std::size_t>(i)].derivative(j).eval(p);
      for (int k = 0; k < n; ++k) v -= gam(k, i, j) * df[static_cast<std::size_t>(k)];
      out.at(i, j) = v;
    }
  return out;
}

double laplacian(const MetricField& g, const Expr& f, const Point& p) {
  const int n = g.dim();
  MetricPointData md = metric_at(g, p);
  SymTensor2 h = hessian(g, f, p);
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += md.g_inv(i, j) * h(i, j);
  return s;
}

double bochner_residual(const MetricField& g, const Expr& phi, const Point& p,
                        const TangentVector& X) {
  const int n = g.dim();
  MetricPointData md = metric_at(g, p);
  Christoffel gam = christoffel(g, p);

  // symbolic Hessian components Hess_kj = d_k d_j phi - Gamma^l_kj d_l phi
  std::vector<Expr> dphi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dphi[static_cast<std::size_t>(i)] = phi.derivative(i);
  std::vector<std::vector<Expr>> hess(static_cast<std::size_t>(n),
                                      std::vector<Expr>(static_cast<std::size_t>(n)));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Expr e = dphi[static_cast<std::size_t>(k)].derivative(j);
      for (int l = 0; l < n; ++l)
        e = Expr::sub(e, Expr::mul(g.christoffel_expr(l, k, j), dphi[static_cast<std::size_t>(l)]));
      hess[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = e;
    }

  // div(Hess)_j = g^{ik} (d_i Hess_kj - Gamma^l_ik Hess_lj - Gamma^l_ij Hess_kl)
  std::vector<double> hess_val(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      hess_val[static_cast<std::size_t>(i) * n + j] =
          hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(p);

  std::vector<double> div(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double term = hess[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]
                          .derivative(i)
                          .eval(p);
        for (int l = 0; l < n; ++l)
          term -= gam(l, i, k) * hess_val[static_cast<std::size_t>(l) * n + j] +
                  gam(l, i, j) * hess_val[static_cast<std::size_t>(k) * n + l];
        s += md.g_inv(i, k) * term;
      }
    div[static_cast<std::size_t>(j)] = s;
  }

  double lhs = 0.0;
  for (int j = 0; j < n; ++j) lhs += div[static_cast<std::size_t>(j)] * X.components[static_cast<std::size_t>(j)];

  // Ric(grad phi, X)
  SymTensor2 ric = ricci(g, p);
  TangentVector grad = gradient(g, phi, p);
  double ric_term = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ric_term += ric(i, j) * grad.components[static_cast<std::size_t>(i)] *
                  X.components[static_cast<std::size_t>(j)];

  // X(Lap phi) with Lap phi = g^{ij} Hess_ij as a symbolic expression
  Expr lap = Expr::constant(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lap = Expr::add(lap, Expr::mul(g.inverse_component(i, j),
                                     hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  double x_lap = 0.0;
  for (int i = 0; i < n; ++i)
    x_lap += lap.derivative(i).eval(p) * X.components[static_cast<std::size_t>(i)];

  return lhs - ric_term - x_lap;
}

MetricField pullback_metric(std::vector<std::string> coords, const std::vector<Expr>& embedding,
                            Signature ambient, DomainPredicate domain, std::string label,
                            std::vector<std::array<double, 2>> sample_box) {
  const int n = static_cast<int>(coords.size());
  const int N = ambient.dimension;
  if (static_cast<int>(embedding.size()) != N)
    throw Error("embedding component count does not match ambient dimension");

  const std::size_t tri = static_cast<std::size_t>(n) * (n + 1) / 2;
  std::vector<Expr> upper(tri);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Expr acc = Expr::constant(0.0);
      for (int a = 0; a < N; ++a) {
        Expr term = Expr::mul(embedding[static_cast<std::size_t>(a)].derivative(i),
                              embedding[static_cast<std::size_t>(a)].derivative(j));
        acc = (a < ambient.index) ? Expr::sub(acc, term) : Expr::add(acc, term);
      }
      upper[MetricField::tri_index(n, i, j)] = acc;
    }

  MetricField g = MetricField::create(std::move(coords), std::move(upper), std::move(domain),
                                      std::move(label), std::move(sample_box));
  verify_nondegenerate(g, g.plan());
  return g;
}

void verify_nondegenerate(const MetricField& g, const SamplingPlan& plan) {
  auto pts = sample_points(plan, [&g](const Point& p) { return g.domain().contains(p); });
  for (const Point& p : pts) (void)metric_at(g, p);  // throws DegenerateMetric
}

Signature verify_signature_constant(const MetricField& g, const SamplingPlan& plan) {
  auto pts = sample_points(plan, [&g](const Point& p) { return g.domain().contains(p); });
  Signature sig;
  bool first = true;
  for (const Point& p : pts) {
    Signature s = metric_at(g, p).signature;
    if (first) {
      sig = s;
      first = false;
    } else if (!(s == sig)) {
      throw Error("metric signature not constant over sampled chart points: index " +
                  std::to_string(sig.index) + " vs " + std::to_string(s.index));
    }
  }
  return sig;
}

}  // namespace warpcheck
