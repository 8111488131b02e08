#include "warpcheck/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>

namespace warpcheck {

namespace {

std::shared_ptr<const ExprNode> make_node(ExprNode n) {
  return std::make_shared<const ExprNode>(std::move(n));
}

bool is_const(const Expr& e, double v) {
  return e.is_constant() && e.constant_value() == v;
}

double apply_func(Func f, double x) {
  switch (f) {
    case Func::Exp: return std::exp(x);
    case Func::Log:
      if (x <= 0.0) throw EvalError("log of non-positive value");
      return std::log(x);
    case Func::Sqrt:
      if (x < 0.0) throw EvalError("sqrt of negative value");
      return std::sqrt(x);
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan: return std::tan(x);
    case Func::Sinh: return std::sinh(x);
    case Func::Cosh: return std::cosh(x);
    case Func::Tanh: return std::tanh(x);
    case Func::Abs: return std::abs(x);
    case Func::Sign:
      if (x == 0.0) throw EvalError("sign undefined at 0");
      return x > 0.0 ? 1.0 : -1.0;
  }
  throw EvalError("unknown function");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Abs: return "abs";
    case Func::Sign: return "sign";
  }
  return "?";
}

Expr Expr::constant(double v) {
  ExprNode n;
  n.kind = NodeKind::Constant;
  n.value = v;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(std::string name, int index) {
  ExprNode n;
  n.kind = NodeKind::Variable;
  n.var = index;
  n.name = std::move(name);
  return Expr(make_node(std::move(n)));
}

bool Expr::is_constant() const {
  return node_ && node_->kind == NodeKind::Constant;
}

double Expr::constant_value() const { return node_->value; }

Expr Expr::add(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant())
    return constant(a.constant_value() + b.constant_value());
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  ExprNode n;
  n.kind = NodeKind::Binary;
  n.bop = BinaryOp::Add;
  n.args = {std::move(a), std::move(b)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::sub(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant())
    return constant(a.constant_value() - b.constant_value());
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b));
  ExprNode n;
  n.kind = NodeKind::Binary;
  n.bop = BinaryOp::Sub;
  n.args = {std::move(a), std::move(b)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::mul(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant())
    return constant(a.constant_value() * b.constant_value());
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  ExprNode n;
  n.kind = NodeKind::Binary;
  n.bop = BinaryOp::Mul;
  n.args = {std::move(a), std::move(b)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::div(Expr a, Expr b) {
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return constant(0.0);
  if (is_const(b, 1.0)) return a;
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0) {
    double q = a.constant_value() / b.constant_value();
    if (std::isfinite(q)) return constant(q);
  }
  ExprNode n;
  n.kind = NodeKind::Binary;
  n.bop = BinaryOp::Div;
  n.args = {std::move(a), std::move(b)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::pow(Expr a, Expr b) {
  if (!b.is_constant()) {
    // a^b with variable exponent: rewrite as exp(b*log(a)); every use in the
    // target formulas has a positive base.
    return call(Func::Exp, mul(std::move(b), call(Func::Log, std::move(a))));
  }
  double e = b.constant_value();
  if (e == 1.0) return a;
  if (e == 0.0) return constant(1.0);
  if (a.is_constant()) {
    double v = std::pow(a.constant_value(), e);
    if (std::isfinite(v)) return constant(v);
  }
  ExprNode n;
  n.kind = NodeKind::Binary;
  n.bop = BinaryOp::Pow;
  n.args = {std::move(a), std::move(b)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::neg(Expr a) {
  if (a.is_constant()) return constant(-a.constant_value());
  if (a.node().kind == NodeKind::Unary && a.node().uop == UnaryOp::Neg)
    return a.node().args[0];
  ExprNode n;
  n.kind = NodeKind::Unary;
  n.uop = UnaryOp::Neg;
  n.args = {std::move(a)};
  return Expr(make_node(std::move(n)));
}

Expr Expr::call(Func f, Expr arg) {
  if (arg.is_constant()) {
    // Fold only when the result is finite; otherwise keep the node so the
    // error surfaces at evaluation time with context.
    try {
      double v = apply_func(f, arg.constant_value());
      if (std::isfinite(v)) return constant(v);
    } catch (const EvalError&) {
    }
  }
  ExprNode n;
  n.kind = NodeKind::Call;
  n.func = f;
  n.args = {std::move(arg)};
  return Expr(make_node(std::move(n)));
}

double Expr::eval(std::span<const double> point) const {
  const ExprNode& n = *node_;
  double r = 0.0;
  switch (n.kind) {
    case NodeKind::Constant:
      r = n.value;
      break;
    case NodeKind::Variable:
      if (n.var < 0 || static_cast<std::size_t>(n.var) >= point.size())
        throw EvalError("variable '" + n.name + "' out of range for point");
      r = point[static_cast<std::size_t>(n.var)];
      break;
    case NodeKind::Unary:
      r = -n.args[0].eval(point);
      break;
    case NodeKind::Binary: {
      double a = n.args[0].eval(point);
      double b = n.args[1].eval(point);
      switch (n.bop) {
        case BinaryOp::Add: r = a + b; break;
        case BinaryOp::Sub: r = a - b; break;
        case BinaryOp::Mul: r = a * b; break;
        case BinaryOp::Div:
          if (b == 0.0) throw EvalError("division by zero");
          r = a / b;
          break;
        case BinaryOp::Pow: r = std::pow(a, b); break;
      }
      break;
    }
    case NodeKind::Call:
      r = apply_func(n.func, n.args[0].eval(point));
      break;
  }
  if (!std::isfinite(r)) throw EvalError("non-finite value in expression evaluation");
  return r;
}

Expr Expr::derivative(int var) const {
  const ExprNode& n = *node_;
  switch (n.kind) {
    case NodeKind::Constant:
      return constant(0.0);
    case NodeKind::Variable:
      return constant(n.var == var ? 1.0 : 0.0);
    case NodeKind::Unary:
      return neg(n.args[0].derivative(var));
    case NodeKind::Binary: {
      const Expr& a = n.args[0];
      const Expr& b = n.args[1];
      Expr da = a.derivative(var);
      Expr db = b.derivative(var);
      switch (n.bop) {
        case BinaryOp::Add: return add(da, db);
        case BinaryOp::Sub: return sub(da, db);
        case BinaryOp::Mul: return add(mul(da, b), mul(a, db));
        case BinaryOp::Div:
          return div(sub(mul(da, b), mul(a, db)), mul(b, b));
        case BinaryOp::Pow: {
          // exponent is constant by construction
          double e = b.constant_value();
          return mul(mul(constant(e), pow(a, constant(e - 1.0))), da);
        }
      }
      break;
    }
    case NodeKind::Call: {
      const Expr& u = n.args[0];
      Expr du = u.derivative(var);
      switch (n.func) {
        case Func::Exp: return mul(call(Func::Exp, u), du);
        case Func::Log: return div(du, u);
        case Func::Sqrt: return div(du, mul(constant(2.0), call(Func::Sqrt, u)));
        case Func::Sin: return mul(call(Func::Cos, u), du);
        case Func::Cos: return neg(mul(call(Func::Sin, u), du));
        case Func::Tan:
          return div(du, pow(call(Func::Cos, u), constant(2.0)));
        case Func::Sinh: return mul(call(Func::Cosh, u), du);
        case Func::Cosh: return mul(call(Func::Sinh, u), du);
        case Func::Tanh:
          return div(du, pow(call(Func::Cosh, u), constant(2.0)));
        case Func::Abs: return mul(call(Func::Sign, u), du);
        case Func::Sign: return constant(0.0);
      }
      break;
    }
  }
  throw Error("derivative: malformed expression node");
}

Expr Expr::substitute(std::span<const int> vars, std::span<const double> values) const {
  const ExprNode& n = *node_;
  switch (n.kind) {
    case NodeKind::Constant:
      return *this;
    case NodeKind::Variable:
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == n.var) return constant(values[i]);
      return *this;
    case NodeKind::Unary:
      return neg(n.args[0].substitute(vars, values));
    case NodeKind::Binary: {
      Expr a = n.args[0].substitute(vars, values);
      Expr b = n.args[1].substitute(vars, values);
      switch (n.bop) {
        case BinaryOp::Add: return add(a, b);
        case BinaryOp::Sub: return sub(a, b);
        case BinaryOp::Mul: return mul(a, b);
        case BinaryOp::Div: return div(a, b);
        case BinaryOp::Pow: return pow(a, b);
      }
      break;
    }
    case NodeKind::Call:
      return call(n.func, n.args[0].substitute(vars, values));
  }
  throw Error("substitute: malformed expression node");
}

Expr Expr::reindex(std::span<const int> index_map, std::span<const std::string> new_names) const {
  const ExprNode& n = *node_;
  switch (n.kind) {
    case NodeKind::Constant:
      return *this;
    case NodeKind::Variable: {
      if (n.var < 0 || static_cast<std::size_t>(n.var) >= index_map.size() ||
          index_map[static_cast<std::size_t>(n.var)] < 0)
        throw Error("reindex: variable '" + n.name + "' not available in target chart");
      int idx = index_map[static_cast<std::size_t>(n.var)];
      return variable(new_names[static_cast<std::size_t>(idx)], idx);
    }
    case NodeKind::Unary:
      return neg(n.args[0].reindex(index_map, new_names));
    case NodeKind::Binary: {
      Expr a = n.args[0].reindex(index_map, new_names);
      Expr b = n.args[1].reindex(index_map, new_names);
      switch (n.bop) {
        case BinaryOp::Add: return add(a, b);
        case BinaryOp::Sub: return sub(a, b);
        case BinaryOp::Mul: return mul(a, b);
        case BinaryOp::Div: return div(a, b);
        case BinaryOp::Pow: return pow(a, b);
      }
      break;
    }
    case NodeKind::Call:
      return call(n.func, n.args[0].reindex(index_map, new_names));
  }
  throw Error("reindex: malformed expression node");
}

bool Expr::depends_on(int var) const {
  const ExprNode& n = *node_;
  if (n.kind == NodeKind::Variable) return n.var == var;
  for (const Expr& a : n.args)
    if (a.depends_on(var)) return true;
  return false;
}

int Expr::max_var_index() const {
  const ExprNode& n = *node_;
  if (n.kind == NodeKind::Variable) return n.var;
  int m = -1;
  for (const Expr& a : n.args) m = std::max(m, a.max_var_index());
  return m;
}

int Expr::depth() const {
  const ExprNode& n = *node_;
  int d = 0;
  for (const Expr& a : n.args) d = std::max(d, a.depth());
  return d + 1;
}

namespace {

// Print with minimal parentheses. prec: Add/Sub 1, Mul/Div 2, unary minus 3,
// Pow 4, atoms 5.
int node_prec(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Constant:
      return n.value < 0.0 ? 3 : 5;
    case NodeKind::Variable:
      return 5;
    case NodeKind::Unary:
      return 3;
    case NodeKind::Call:
      return 5;
    case NodeKind::Binary:
      switch (n.bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
  }
  return 5;
}

void print_node(const Expr& e, std::string& out, int parent_prec);

void print_child(const Expr& e, std::string& out, int min_prec) {
  if (node_prec(e.node()) < min_prec) {
    out += '(';
    print_node(e, out, 0);
    out += ')';
  } else {
    print_node(e, out, min_prec);
  }
}

void print_node(const Expr& e, std::string& out, int) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant:
      out += format_number(n.value);
      return;
    case NodeKind::Variable:
      out += n.name;
      return;
    case NodeKind::Unary:
      out += '-';
      print_child(n.args[0], out, 3);
      return;
    case NodeKind::Call:
      out += func_name(n.func);
      out += '(';
      print_node(n.args[0], out, 0);
      out += ')';
      return;
    case NodeKind::Binary:
      switch (n.bop) {
        case BinaryOp::Add:
          print_child(n.args[0], out, 1);
          out += " + ";
          print_child(n.args[1], out, 2);
          return;
        case BinaryOp::Sub:
          print_child(n.args[0], out, 1);
          out += " - ";
          print_child(n.args[1], out, 2);
          return;
        case BinaryOp::Mul:
          print_child(n.args[0], out, 2);
          out += "*";
          print_child(n.args[1], out, 3);
          return;
        case BinaryOp::Div:
          print_child(n.args[0], out, 2);
          out += "/";
          print_child(n.args[1], out, 3);
          return;
        case BinaryOp::Pow:
          print_child(n.args[0], out, 5);
          out += "^";
          // exponent is a constant; parenthesize negatives so the text
          // re-parses under the grammar
          print_child(n.args[1], out, 4);
          return;
      }
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print_node(*this, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
  Type type;
  std::size_t offset;
  double number = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': tok_.type = Token::Plus; ++pos_; return;
      case '-': tok_.type = Token::Minus; ++pos_; return;
      case '*': tok_.type = Token::Star; ++pos_; return;
      case '/': tok_.type = Token::Slash; ++pos_; return;
      case '^': tok_.type = Token::Caret; ++pos_; return;
      case '(': tok_.type = Token::LParen; ++pos_; return;
      case ')': tok_.type = Token::RParen; ++pos_; return;
      case ',': tok_.type = Token::Comma; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.type = Token::Ident;
      tok_.text.assign(src_.substr(start, pos_ - start));
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to the next token (e.g. "2e" is "2"·"e")
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    tok_.type = Token::Number;
    tok_.number = std::strtod(text.c_str(), nullptr);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

const std::map<std::string, Func, std::less<>>& function_table() {
  static const std::map<std::string, Func, std::less<>> table = {
      {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
      {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
      {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh},
      {"abs", Func::Abs},   {"sign", Func::Sign},
  };
  return table;
}

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> coords)
      : lex_(src), coords_(coords) {}

  Expr run() {
    Expr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.type != Token::End)
      throw ParseError("unexpected trailing input", t.offset);
    return e;
  }

 private:
  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      const Token& t = lex_.peek();
      if (t.type == Token::Plus) {
        lex_.take();
        e = Expr::add(e, parse_term());
      } else if (t.type == Token::Minus) {
        lex_.take();
        e = Expr::sub(e, parse_term());
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (true) {
      const Token& t = lex_.peek();
      if (t.type == Token::Star) {
        lex_.take();
        e = Expr::mul(e, parse_factor());
      } else if (t.type == Token::Slash) {
        lex_.take();
        e = Expr::div(e, parse_factor());
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    if (lex_.peek().type == Token::Minus) {
      lex_.take();
      return Expr::neg(parse_power());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lex_.peek().type == Token::Caret) {
      lex_.take();
      return Expr::pow(base, parse_power());  // right-associative
    }
    return base;
  }

  Expr parse_atom() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Number:
        return Expr::constant(t.number);
      case Token::LParen: {
        Expr e = parse_expr();
        expect(Token::RParen, ")");
        return e;
      }
      case Token::Ident:
        return resolve_ident(t);
      default:
        throw ParseError("expected number, identifier or '('", t.offset);
    }
  }

  Expr resolve_ident(const Token& t) {
    // coordinates shadow built-in constants and functions
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == t.text)
        return Expr::variable(coords_[i], static_cast<int>(i));

    if (lex_.peek().type == Token::LParen) {
      lex_.take();
      std::vector<Expr> args;
      args.push_back(parse_expr());
      while (lex_.peek().type == Token::Comma) {
        lex_.take();
        args.push_back(parse_expr());
      }
      expect(Token::RParen, ")");
      if (t.text == "pow") {
        if (args.size() != 2)
          throw ParseError("pow expects 2 arguments, got " + std::to_string(args.size()),
                           t.offset);
        return Expr::pow(args[0], args[1]);
      }
      auto it = function_table().find(t.text);
      if (it == function_table().end())
        throw ParseError("unknown function '" + t.text + "'", t.offset);
      if (args.size() != 1)
        throw ParseError("function '" + t.text + "' expects 1 argument, got " +
                             std::to_string(args.size()),
                         t.offset);
      return Expr::call(it->second, args[0]);
    }

    if (t.text == "pi") return Expr::constant(M_PI);
    if (t.text == "e") return Expr::constant(M_E);
    throw ParseError("unknown identifier '" + t.text + "'", t.offset);
  }

  void expect(Token::Type type, const char* what) {
    Token t = lex_.take();
    if (t.type != type)
      throw ParseError(std::string("expected '") + what + "'", t.offset);
  }

  Lexer lex_;
  std::span<const std::string> coords_;
};

}  // namespace

Expr parse(std::string_view source, std::span<const std::string> coordinates) {
  return Parser(source, coordinates).run();
}

}  // namespace warpcheck
