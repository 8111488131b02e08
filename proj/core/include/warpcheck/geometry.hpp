#pragma once

#include <vector>

#include "warpcheck/metric.hpp"
#include "warpcheck/tensor.hpp"

namespace warpcheck {

/// Metric components, inverse and eigenvalue-sign signature at a point.
struct MetricPointData {
  SymTensor2 g;
  SymTensor2 g_inv;
  Signature signature;
  double scaled_det = 0.0;  // det after row normalization
};

/// Evaluate g at p, invert it and read off the signature. Throws
/// DomainViolation if p is outside the chart domain and DegenerateMetric if
/// |det| after row scaling is below 1e-12.
MetricPointData metric_at(const MetricField& g, const Point& p);

/// Christoffel symbols Gamma^k_ij at a point, symmetric in (i,j).
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n)
      : n_(n), a_(static_cast<std::size_t>(n) * n * (n + 1) / 2, 0.0) {}

  int dim() const { return n_; }
  double operator()(int k, int i, int j) const { return a_[idx(k, i, j)]; }
  double& at(int k, int i, int j) { return a_[idx(k, i, j)]; }

 private:
  std::size_t idx(int k, int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(k) * (static_cast<std::size_t>(n_) * (n_ + 1) / 2) +
           MetricField::tri_index(n_, i, j);
  }
  int n_ = 0;
  std::vector<double> a_;
};

/// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij), evaluated from
/// the precomputed symbolic expressions.
Christoffel christoffel(const MetricField& g, const Point& p);

/// Ricci tensor R_ij = d_k Gamma^k_ij - d_i Gamma^k_kj
///                     + Gamma^k_kl Gamma^l_ij - Gamma^k_il Gamma^l_kj.
/// Derivatives of Gamma are symbolic unless the Christoffel ASTs exceed the
/// metric's depth limit, in which case central differences with step
/// 1e-4*(1+|p_m|) are used.
SymTensor2 ricci(const MetricField& g, const Point& p);

/// Ricci before symmetrization (for symmetry diagnostics).
std::vector<std::vector<double>> ricci_full(const MetricField& g, const Point& p);

/// Full curvature tensor R^l_{kij} with Ric_{kj} = sum_i R^i_{kij};
/// returned as r[l][k][i][j].
std::vector<std::vector<std::vector<std::vector<double>>>> riemann(const MetricField& g,
                                                                   const Point& p);

/// grad^i = g^{ij} d_j f.
TangentVector gradient(const MetricField& g, const Expr& f, const Point& p);

/// Sign-carrying g_ij v^i v^j.
double norm_sq(const MetricField& g, const TangentVector& v, const Point& p);

CausalCharacter causal_character(const MetricField& g, const TangentVector& v, const Point& p);

/// Hess_ij = d_i d_j f - Gamma^k_ij d_k f.
SymTensor2 hessian(const MetricField& g, const Expr& f, const Point& p);

/// g^{ij} Hess_ij (indefinite trace).
double laplacian(const MetricField& g, const Expr& f, const Point& p);

/// div(Hess phi)(X) - Ric(grad phi, X) - X(Lap phi); identically zero for
/// smooth phi, so the return value is a numerical-consistency residual.
double bochner_residual(const MetricField& g, const Expr& phi, const Point& p,
                        const TangentVector& X);

/// First fundamental form of an embedding into a semi-Euclidean space of the
/// given ambient signature (negative directions first):
/// g_ij = sum_a eps_a d_i psi^a d_j psi^a.
MetricField pullback_metric(std::vector<std::string> coords, const std::vector<Expr>& embedding,
                            Signature ambient, DomainPredicate domain, std::string label = "",
                            std::vector<std::array<double, 2>> sample_box = {});

/// Sampling-based invariant checks (throw on violation).
void verify_nondegenerate(const MetricField& g, const SamplingPlan& plan);
Signature verify_signature_constant(const MetricField& g, const SamplingPlan& plan);

}  // namespace warpcheck
