#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "warpcheck/expr.hpp"
#include "warpcheck/tensor.hpp"

namespace wtest {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

/// Central finite difference of an expression, step 1e-5 by default.
inline double central_diff(const warpcheck::Expr& e, int var, warpcheck::Point p,
                           double h = 1e-5) {
  warpcheck::Point hi = p, lo = p;
  hi[static_cast<std::size_t>(var)] += h;
  lo[static_cast<std::size_t>(var)] -= h;
  return (e.eval(hi) - e.eval(lo)) / (2.0 * h);
}

inline double max_abs_diff(const warpcheck::SymTensor2& a, const warpcheck::SymTensor2& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// Random expressions built from +,-,*,bounded powers and sin/cos/sinh/
/// cosh/exp of bounded arguments, so finite-difference oracles stay in
/// well-conditioned territory.
class ExprGen {
 public:
  ExprGen(unsigned seed, int nvars, const std::vector<std::string>& names)
      : rng_(seed), nvars_(nvars), names_(names) {}

  warpcheck::Expr gen(int depth = 3) {
    using warpcheck::Expr;
    using warpcheck::Func;
    if (depth == 0 || pick(4) == 0) {
      if (pick(2) == 0) return Expr::constant(uniform(-2.0, 2.0));
      int v = pick(nvars_);
      return Expr::variable(names_[static_cast<std::size_t>(v)], v);
    }
    switch (pick(6)) {
      case 0: return Expr::add(gen(depth - 1), gen(depth - 1));
      case 1: return Expr::sub(gen(depth - 1), gen(depth - 1));
      case 2: return Expr::mul(gen(depth - 1), gen(depth - 1));
      case 3: return Expr::pow(gen(depth - 1), Expr::constant(static_cast<double>(1 + pick(3))));
      case 4: {
        static const Func funcs[] = {Func::Sin, Func::Cos, Func::Sinh, Func::Cosh, Func::Exp,
                                     Func::Tanh};
        // damp the argument so exp/cosh stay small
        return Expr::call(funcs[pick(6)], Expr::mul(Expr::constant(0.5), gen(depth - 1)));
      }
      default: return Expr::mul(Expr::constant(uniform(-2.0, 2.0)), gen(depth - 1));
    }
  }

  warpcheck::Point point(double lo = -1.0, double hi = 1.0) {
    warpcheck::Point p(static_cast<std::size_t>(nvars_));
    for (double& x : p) x = uniform(lo, hi);
    return p;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  std::mt19937 rng_;
  int nvars_;
  std::vector<std::string> names_;
};

}  // namespace wtest
