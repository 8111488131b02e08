#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "warpcheck/errors.hpp"

namespace warpcheck {

using Point = std::vector<double>;

/// Dimension and index (number of negative eigenvalues) of a metric.
struct Signature {
  int dimension = 0;
  int index = 0;

  bool operator==(const Signature&) const = default;
};

/// Symmetric 2-tensor evaluated at a point. Only the upper triangle is
/// stored, so symmetry is exact by construction.
class SymTensor2 {
 public:
  SymTensor2() = default;
  explicit SymTensor2(int n) : n_(n), a_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {}

  int dim() const { return n_; }

  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  double& at(int i, int j) { return a_[idx(i, j)]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  SymTensor2& operator+=(const SymTensor2& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  SymTensor2& operator-=(const SymTensor2& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  SymTensor2& operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
  }

  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }

 private:
  std::size_t idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> a_;
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

/// Tangent vector at a point, stored by contravariant components.
struct TangentVector {
  std::vector<double> components;

  double euclid_norm_sq() const {
    double s = 0.0;
    for (double c : components) s += c * c;
    return s;
  }
};

/// Classify g(v,v) against the lightlike tolerance 1e-9 * |v|^2_euclid.
inline CausalCharacter classify_causal(double norm_sq, double euclid_norm_sq) {
  constexpr double kLightlikeTol = 1e-9;
  if (std::abs(norm_sq) <= kLightlikeTol * std::max(1e-300, euclid_norm_sq))
    return CausalCharacter::Lightlike;
  return norm_sq < 0.0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike;
}

}  // namespace warpcheck
