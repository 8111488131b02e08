#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "warpcheck/expr.hpp"
#include "warpcheck/sampling.hpp"
#include "warpcheck/tensor.hpp"

namespace warpcheck {

/// Chart domain: "true"/"all" or a conjunction of inequalities between
/// expressions, e.g. "y > 0" or "theta > 0.001 and theta < 3.14".
class DomainPredicate {
 public:
  static DomainPredicate always();
  static DomainPredicate parse(std::string_view source,
                               std::span<const std::string> coords);

  /// True when every inequality holds; evaluation errors count as outside.
  bool contains(const Point& p) const;

  bool is_always() const { return comparisons_.empty(); }
  const std::string& source() const { return source_; }

  /// Conjunction for a product chart: `this` over the first block of
  /// coordinates, `fiber` re-indexed to start at `offset`.
  DomainPredicate product_with(const DomainPredicate& fiber, int offset,
                               std::span<const std::string> product_coords) const;

 private:
  enum class Cmp { LT, LE, GT, GE };
  struct Comparison {
    Expr lhs;
    Cmp op;
    Expr rhs;
  };
  std::string source_;
  std::vector<Comparison> comparisons_;
};

/// Semi-Riemannian metric on a single chart. Components are symmetric
/// symbolic expressions over the chart coordinates; only the upper triangle
/// is stored. Christoffel symbols, their first derivatives and the symbolic
/// inverse are precomputed at construction, so all later operations are pure
/// and safe to run concurrently.
class MetricField {
 public:
  MetricField() = default;

  /// `upper[t]` holds g_ij for i<=j in row-major triangular order. Invalid
  /// (default) Expr entries mean 0.
  static MetricField create(std::vector<std::string> coords, std::vector<Expr> upper,
                            DomainPredicate domain, std::string label = "",
                            std::vector<std::array<double, 2>> sample_box = {});

  bool valid() const { return impl_ != nullptr; }
  int dim() const;
  const std::vector<std::string>& coords() const;
  const Expr& component(int i, int j) const;          // symbolic g_ij
  const Expr& d_component(int k, int i, int j) const; // symbolic d g_ij / dx_k
  const Expr& inverse_component(int i, int j) const;  // symbolic g^ij
  const Expr& christoffel_expr(int k, int i, int j) const;   // Gamma^k_ij
  const Expr& d_christoffel_expr(int m, int k, int i, int j) const;
  int christoffel_depth() const;  // max AST depth over all Gamma^k_ij

  const DomainPredicate& domain() const;
  const std::string& label() const;
  const std::vector<std::array<double, 2>>& sample_box() const;

  /// Depth limit above which Ricci falls back to central differences of the
  /// Christoffel symbols; 0 or negative means unlimited (the default).
  MetricField with_symbolic_depth_limit(int limit) const;
  int symbolic_depth_limit() const;

  /// Sampling plan over this chart's box with the given seed/count.
  SamplingPlan plan(std::uint64_t seed = 42, int count = 100) const;

  static std::size_t tri_index(int n, int i, int j);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  int depth_limit_ = 0;
};

}  // namespace warpcheck
