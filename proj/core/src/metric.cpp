#include "warpcheck/metric.hpp"

#include <algorithm>

namespace warpcheck {

// ---------------------------------------------------------------------------
// DomainPredicate
// ---------------------------------------------------------------------------

DomainPredicate DomainPredicate::always() {
  DomainPredicate d;
  d.source_ = "true";
  return d;
}

DomainPredicate DomainPredicate::parse(std::string_view source,
                                       std::span<const std::string> coords) {
  // trim
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view src = trim(source);
  if (src.empty() || src == "true" || src == "all") return always();

  DomainPredicate d;
  d.source_.assign(src);

  std::size_t pos = 0;
  while (pos <= src.size()) {
    std::size_t split = src.find(" and ", pos);
    std::string_view clause =
        trim(src.substr(pos, (split == std::string_view::npos ? src.size() : split) - pos));
    pos = (split == std::string_view::npos) ? src.size() + 1 : split + 5;

    // locate the comparison operator (expressions contain no '<' or '>')
    std::size_t op_pos = clause.find_first_of("<>");
    if (op_pos == std::string_view::npos)
      throw ParseError("domain clause lacks a comparison operator", 0);
    bool ge_or_le = op_pos + 1 < clause.size() && clause[op_pos + 1] == '=';
    Cmp op;
    if (clause[op_pos] == '<')
      op = ge_or_le ? Cmp::LE : Cmp::LT;
    else
      op = ge_or_le ? Cmp::GE : Cmp::GT;

    Expr lhs = warpcheck::parse(clause.substr(0, op_pos), coords);
    Expr rhs = warpcheck::parse(clause.substr(op_pos + (ge_or_le ? 2 : 1)), coords);
    d.comparisons_.push_back({std::move(lhs), op, std::move(rhs)});
  }
  return d;
}

bool DomainPredicate::contains(const Point& p) const {
  try {
    for (const Comparison& c : comparisons_) {
      double a = c.lhs.eval(p);
      double b = c.rhs.eval(p);
      switch (c.op) {
        case Cmp::LT: if (!(a < b)) return false; break;
        case Cmp::LE: if (!(a <= b)) return false; break;
        case Cmp::GT: if (!(a > b)) return false; break;
        case Cmp::GE: if (!(a >= b)) return false; break;
      }
    }
  } catch (const EvalError&) {
    return false;
  }
  return true;
}

DomainPredicate DomainPredicate::product_with(const DomainPredicate& fiber, int offset,
                                              std::span<const std::string> product_coords) const {
  DomainPredicate d;
  d.comparisons_ = comparisons_;  // base comparisons keep their indices

  std::vector<int> index_map(product_coords.size(), -1);
  for (std::size_t i = 0; offset + i < product_coords.size(); ++i)
    index_map[i] = offset + static_cast<int>(i);
  for (const Comparison& c : fiber.comparisons_) {
    d.comparisons_.push_back({c.lhs.reindex(index_map, product_coords), c.op,
                              c.rhs.reindex(index_map, product_coords)});
  }

  if (is_always() && fiber.is_always())
    d.source_ = "true";
  else if (fiber.is_always())
    d.source_ = source_;
  else if (is_always())
    d.source_ = fiber.source_;
  else
    d.source_ = source_ + " and " + fiber.source_;
  return d;
}

// ---------------------------------------------------------------------------
// MetricField
// ---------------------------------------------------------------------------

struct MetricField::Impl {
  std::vector<std::string> coords;
  int n = 0;
  std::vector<Expr> upper;                 // g_ij, i<=j
  std::vector<Expr> d_upper;               // [k][tri] derivative of g_ij
  std::vector<Expr> inverse;               // g^ij, i<=j (adjugate/det)
  Expr det;
  std::vector<Expr> gamma;                 // [k][tri]
  std::vector<Expr> d_gamma;               // [m][k][tri]
  int gamma_depth = 0;
  DomainPredicate domain;
  std::string label;
  std::vector<std::array<double, 2>> box;
};

std::size_t MetricField::tri_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + static_cast<std::size_t>(j);
}

namespace {

// Laplace-expansion determinant of a small symbolic matrix; constant folding
// collapses the zero pattern of block metrics.
Expr sym_det(const std::vector<std::vector<Expr>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Expr acc = Expr::constant(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Expr>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Expr term = Expr::mul(m[0][j], sym_det(minor));
    acc = (j % 2 == 0) ? Expr::add(acc, term) : Expr::sub(acc, term);
  }
  return acc;
}

Expr sym_cofactor(const std::vector<std::vector<Expr>>& m, std::size_t i, std::size_t j) {
  const std::size_t n = m.size();
  if (n == 1) return Expr::constant(1.0);
  std::vector<std::vector<Expr>> minor;
  minor.reserve(n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    if (r == i) continue;
    std::vector<Expr> row;
    row.reserve(n - 1);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) row.push_back(m[r][c]);
    minor.push_back(std::move(row));
  }
  Expr d = sym_det(minor);
  return ((i + j) % 2 == 0) ? d : Expr::neg(d);
}

}  // namespace

MetricField MetricField::create(std::vector<std::string> coords, std::vector<Expr> upper,
                                DomainPredicate domain, std::string label,
                                std::vector<std::array<double, 2>> sample_box) {
  auto impl = std::make_shared<Impl>();
  impl->coords = std::move(coords);
  impl->n = static_cast<int>(impl->coords.size());
  const int n = impl->n;
  if (n <= 0) throw Error("metric needs at least one coordinate");

  const std::size_t tri = static_cast<std::size_t>(n) * (n + 1) / 2;
  if (upper.size() != tri)
    throw Error("metric component count does not match dimension");
  for (Expr& e : upper)
    if (!e.valid()) e = Expr::constant(0.0);
  for (const Expr& e : upper)
    if (e.max_var_index() >= n)
      throw Error("metric component references a coordinate outside the chart");
  impl->upper = std::move(upper);

  impl->domain = std::move(domain);
  impl->label = std::move(label);
  impl->box = sample_box.empty() ? unit_box(n) : std::move(sample_box);
  if (static_cast<int>(impl->box.size()) != n)
    throw Error("sample box dimension does not match chart dimension");

  // first partials of the components
  impl->d_upper.resize(static_cast<std::size_t>(n) * tri);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        impl->d_upper[static_cast<std::size_t>(k) * tri + tri_index(n, i, j)] =
            impl->upper[tri_index(n, i, j)].derivative(k);

  // symbolic inverse via adjugate / det
  std::vector<std::vector<Expr>> full(static_cast<std::size_t>(n),
                                      std::vector<Expr>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) full[i][j] = impl->upper[tri_index(n, i, j)];
  impl->det = sym_det(full);
  impl->inverse.resize(tri);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      impl->inverse[tri_index(n, i, j)] =
          Expr::div(sym_cofactor(full, static_cast<std::size_t>(j), static_cast<std::size_t>(i)),
                    impl->det);

  // Christoffel symbols and their first partials
  impl->gamma.resize(static_cast<std::size_t>(n) * tri);
  auto dg = [&](int k, int i, int j) -> const Expr& {
    return impl->d_upper[static_cast<std::size_t>(k) * tri + tri_index(n, i, j)];
  };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Expr acc = Expr::constant(0.0);
        for (int l = 0; l < n; ++l) {
          Expr inner = Expr::sub(Expr::add(dg(i, j, l), dg(j, i, l)), dg(l, i, j));
          acc = Expr::add(acc, Expr::mul(impl->inverse[tri_index(n, k, l)], inner));
        }
        impl->gamma[static_cast<std::size_t>(k) * tri + tri_index(n, i, j)] =
            Expr::mul(Expr::constant(0.5), acc);
      }

  int depth = 0;
  for (const Expr& e : impl->gamma) depth = std::max(depth, e.depth());
  impl->gamma_depth = depth;

  impl->d_gamma.resize(static_cast<std::size_t>(n) * n * tri);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          impl->d_gamma[(static_cast<std::size_t>(m) * n + k) * tri + tri_index(n, i, j)] =
              impl->gamma[static_cast<std::size_t>(k) * tri + tri_index(n, i, j)].derivative(m);

  MetricField g;
  g.impl_ = std::move(impl);
  return g;
}

int MetricField::dim() const { return impl_->n; }
const std::vector<std::string>& MetricField::coords() const { return impl_->coords; }

const Expr& MetricField::component(int i, int j) const {
  return impl_->upper[tri_index(impl_->n, i, j)];
}

const Expr& MetricField::d_component(int k, int i, int j) const {
  const std::size_t tri = static_cast<std::size_t>(impl_->n) * (impl_->n + 1) / 2;
  return impl_->d_upper[static_cast<std::size_t>(k) * tri + tri_index(impl_->n, i, j)];
}

const Expr& MetricField::inverse_component(int i, int j) const {
  return impl_->inverse[tri_index(impl_->n, i, j)];
}

const Expr& MetricField::christoffel_expr(int k, int i, int j) const {
  const std::size_t tri = static_cast<std::size_t>(impl_->n) * (impl_->n + 1) / 2;
  return impl_->gamma[static_cast<std::size_t>(k) * tri + tri_index(impl_->n, i, j)];
}

const Expr& MetricField::d_christoffel_expr(int m, int k, int i, int j) const {
  const int n = impl_->n;
  const std::size_t tri = static_cast<std::size_t>(n) * (n + 1) / 2;
  return impl_->d_gamma[(static_cast<std::size_t>(m) * n + k) * tri + tri_index(n, i, j)];
}

int MetricField::christoffel_depth() const { return impl_->gamma_depth; }

const DomainPredicate& MetricField::domain() const { return impl_->domain; }
const std::string& MetricField::label() const { return impl_->label; }
const std::vector<std::array<double, 2>>& MetricField::sample_box() const { return impl_->box; }

MetricField MetricField::with_symbolic_depth_limit(int limit) const {
  MetricField g = *this;
  g.depth_limit_ = limit;
  return g;
}

int MetricField::symbolic_depth_limit() const { return depth_limit_; }

SamplingPlan MetricField::plan(std::uint64_t seed, int count) const {
  return SamplingPlan(seed, count, impl_->box);
}

}  // namespace warpcheck
