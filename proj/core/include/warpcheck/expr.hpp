#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warpcheck/errors.hpp"

namespace warpcheck {

enum class NodeKind { Constant, Variable, Unary, Binary, Call };

enum class UnaryOp { Neg };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Built-in scalar functions. Sign is not part of the surface grammar's
// documented set but is accepted by the parser; it arises as the derivative
// of Abs and must survive a print/parse round trip.
enum class Func { Exp, Log, Sqrt, Sin, Cos, Tan, Sinh, Cosh, Tanh, Abs, Sign };

struct ExprNode;

/// Immutable scalar expression over a fixed list of chart coordinates.
/// Construction folds constants and drops additive/multiplicative identities
/// so that derivative trees stay bounded; no other rewriting is performed.
class Expr {
 public:
  Expr() = default;  // empty handle; using it is a programming error

  static Expr constant(double v);
  static Expr variable(std::string name, int index);

  // Smart constructors; all folding happens here.
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  // Constant exponents become Pow nodes; a non-constant exponent is rewritten
  // as exp(b*log(a)), which restricts the base to positive values.
  static Expr pow(Expr a, Expr b);
  static Expr neg(Expr a);
  static Expr call(Func f, Expr arg);

  bool valid() const { return node_ != nullptr; }

  /// Evaluate at a point (indexed by coordinate). Throws EvalError on any
  /// non-finite intermediate value.
  double eval(std::span<const double> point) const;

  /// Exact partial derivative with respect to coordinate `var`.
  Expr derivative(int var) const;

  /// Replace selected variables by constants (e.g. freeze base coordinates).
  Expr substitute(std::span<const int> vars, std::span<const double> values) const;

  /// Re-map variable indices; `index_map[old]` is the new index or -1 if the
  /// variable must not occur (throws Error if it does). New names are taken
  /// from `new_names` at the new index.
  Expr reindex(std::span<const int> index_map, std::span<const std::string> new_names) const;

  bool depends_on(int var) const;
  bool is_constant() const;
  double constant_value() const;  // valid only when is_constant()
  int max_var_index() const;      // -1 when no variables occur
  int depth() const;

  /// Parenthesized text form that re-parses to an evaluation-equivalent
  /// expression.
  std::string str() const;

  const ExprNode& node() const { return *node_; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  NodeKind kind;
  double value = 0.0;     // Constant
  int var = -1;           // Variable index
  std::string name;       // Variable name
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  Func func = Func::Exp;
  std::vector<Expr> args;
};

/// Parse `source` with the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ('-')? power
///   power  := atom ('^' power)?
///   atom   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
/// Identifiers must be declared coordinates, built-in functions, or the
/// constants pi and e (coordinates shadow the constants).
Expr parse(std::string_view source, std::span<const std::string> coordinates);

inline Expr parse(std::string_view source, const std::vector<std::string>& coords) {
  return parse(source, std::span<const std::string>(coords));
}

const char* func_name(Func f);

}  // namespace warpcheck
