#include "hyperframe/expr.hpp"
#include "hyperframe/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <unordered_map>

namespace hyperframe {

struct Expr::Node {
  Kind kind = Kind::Literal;
  double value = 0.0;
  int exponent = 0;
  Func func = Func::Sin;
  Expr a;
  Expr b;
};

namespace {

constexpr std::array<const char*, 11> kFuncNames = {
    "sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt", "atan", "artanh"};

bool constant_value(const Expr& e, double& out) {
  if (e.kind() == Expr::Kind::Literal) {
    out = e.value();
    return true;
  }
  if (e.kind() == Expr::Kind::Neg && e.operand().kind() == Expr::Kind::Literal) {
    out = -e.operand().value();
    return true;
  }
  return false;
}

double ipow(double base, int k) {
  if (k < 0) return 1.0 / ipow(base, -k);
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

// Empty string when x is in the domain of f.
const char* func_domain_violation(Func f, double x) {
  switch (f) {
    case Func::Log: return x <= 0.0 ? "log of non-positive value" : "";
    case Func::Sqrt: return x < 0.0 ? "sqrt of negative value" : "";
    case Func::Artanh: return std::abs(x) >= 1.0 ? "artanh outside (-1,1)" : "";
    default: return "";
  }
}

double apply_func(Func f, double x) {
  switch (f) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan: return std::tan(x);
    case Func::Sinh: return std::sinh(x);
    case Func::Cosh: return std::cosh(x);
    case Func::Tanh: return std::tanh(x);
    case Func::Exp: return std::exp(x);
    case Func::Log: return std::log(x);
    case Func::Sqrt: return std::sqrt(x);
    case Func::Atan: return std::atan(x);
    case Func::Artanh: return std::atanh(x);
  }
  return 0.0;
}

}  // namespace

const char* func_name(Func f) { return kFuncNames[static_cast<std::size_t>(f)]; }

Expr::Expr() = default;

Expr Expr::raw_literal(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->value = v == 0.0 ? 0.0 : v;
  return Expr(std::move(n));
}

Expr Expr::literal(double v) {
  if (v < 0.0) return raw_neg(raw_literal(-v));
  return raw_literal(v);
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  return Expr(std::move(n));
}

Expr Expr::raw_binary(Kind k, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::raw_neg(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::raw_pow(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->a = std::move(base);
  n->exponent = exponent;
  return Expr(std::move(n));
}

Expr Expr::raw_call(Func f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = f;
  n->a = std::move(arg);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_ ? node_->kind : Kind::Literal; }
double Expr::value() const { return node_ ? node_->value : 0.0; }
int Expr::exponent() const { return node_->exponent; }
Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
const Expr& Expr::operand() const { return node_->a; }

bool Expr::is_literal(double v) const {
  double c = 0.0;
  return constant_value(*this, c) && c == v;
}

Expr operator+(const Expr& a, const Expr& b) {
  double x = 0.0, y = 0.0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (ca && cb && std::isfinite(x + y)) return Expr::literal(x + y);
  if (ca && x == 0.0) return b;
  if (cb && y == 0.0) return a;
  if (b.kind() == Expr::Kind::Neg) return Expr::raw_binary(Expr::Kind::Sub, a, b.operand());
  return Expr::raw_binary(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  double x = 0.0, y = 0.0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (ca && cb && std::isfinite(x - y)) return Expr::literal(x - y);
  if (cb && y == 0.0) return a;
  if (ca && x == 0.0) return -b;
  if (b.kind() == Expr::Kind::Neg) return Expr::raw_binary(Expr::Kind::Add, a, b.operand());
  return Expr::raw_binary(Expr::Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  double x = 0.0, y = 0.0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (ca && cb && std::isfinite(x * y)) return Expr::literal(x * y);
  if ((ca && x == 0.0) || (cb && y == 0.0)) return Expr::literal(0.0);
  if (ca && x == 1.0) return b;
  if (cb && y == 1.0) return a;
  if (ca && x == -1.0) return -b;
  if (cb && y == -1.0) return -a;
  return Expr::raw_binary(Expr::Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  double x = 0.0, y = 0.0;
  const bool ca = constant_value(a, x), cb = constant_value(b, y);
  if (ca && cb && y != 0.0 && std::isfinite(x / y)) return Expr::literal(x / y);
  if (ca && x == 0.0) return Expr::literal(0.0);
  if (cb && y == 1.0) return a;
  return Expr::raw_binary(Expr::Kind::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.kind() == Expr::Kind::Neg) return a.operand();
  if (a.is_literal(0.0)) return a;
  return Expr::raw_neg(a);
}

Expr operator*(double s, const Expr& a) { return Expr::literal(s) * a; }

namespace sym {

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr::literal(1.0);
  if (exponent == 1) return base;
  double x = 0.0;
  if (constant_value(base, x) && !(x == 0.0 && exponent < 0)) {
    const double r = ipow(x, exponent);
    if (std::isfinite(r)) return Expr::literal(r);
  }
  return Expr::raw_pow(base, exponent);
}

Expr call(Func f, const Expr& arg) {
  double x = 0.0;
  if (constant_value(arg, x) && *func_domain_violation(f, x) == '\0') {
    const double r = apply_func(f, x);
    if (std::isfinite(r)) return Expr::literal(r);
  }
  return Expr::raw_call(f, arg);
}

Expr sqrt(const Expr& x) { return call(Func::Sqrt, x); }
Expr sin(const Expr& x) { return call(Func::Sin, x); }
Expr cos(const Expr& x) { return call(Func::Cos, x); }
Expr sinh(const Expr& x) { return call(Func::Sinh, x); }
Expr cosh(const Expr& x) { return call(Func::Cosh, x); }
Expr atan(const Expr& x) { return call(Func::Atan, x); }
Expr artanh(const Expr& x) { return call(Func::Artanh, x); }

}  // namespace sym

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ErrorKind k = ErrorKind::Syntax) const {
    throw ParseError(k, msg, pos_ + 1);
  }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = Expr::raw_binary(Expr::Kind::Add, lhs, term());
      else if (accept('-')) lhs = Expr::raw_binary(Expr::Kind::Sub, lhs, term());
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = Expr::raw_binary(Expr::Kind::Mul, lhs, unary());
      else if (accept('/')) lhs = Expr::raw_binary(Expr::Kind::Div, lhs, unary());
      else return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::raw_neg(unary());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    bool paren = accept('(');
    bool negative = accept('-');
    skip();
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    bool ok = pos_ > digits;
    if (ok && pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) ok = false;
    int k = 0;
    if (ok) {
      auto [p, ec] = std::from_chars(s_.data() + digits, s_.data() + pos_, k);
      ok = ec == std::errc{};
    }
    if (ok && paren) ok = accept(')');
    if (!ok) {
      pos_ = start;
      fail("non-integer exponent", ErrorKind::NonIntegerExponent);
    }
    return Expr::raw_pow(base, negative ? -k : k);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "t") return Expr::variable();
      for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
        if (name == kFuncNames[i]) {
          if (!accept('(')) fail("expected '(' after " + std::string(name));
          Expr arg = expr();
          if (!accept(')')) fail("expected ')'");
          return Expr::raw_call(static_cast<Func>(i), arg);
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'", ErrorKind::UnknownIdentifier);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ((s_[pos_] >= '0' && s_[pos_] <= '9') || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && s_[q] >= '0' && s_[q] <= '9') {
        pos_ = q;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
      }
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc{} || p != s_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::raw_literal(v);
  }

  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view source) { return Parser(source).parse(); }

// ---------------------------------------------------------------- printer

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Literal: {
      char buf[64];
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, e.value());
      out.append(buf, p);
      return;
    }
    case Expr::Kind::Variable: out += 't'; return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      const int p = precedence(e);
      print_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
      switch (e.kind()) {
        case Expr::Kind::Add: out += " + "; break;
        case Expr::Kind::Sub: out += " - "; break;
        case Expr::Kind::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      print_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
      return;
    }
    case Expr::Kind::Neg:
      out += '-';
      print_wrapped(e.operand(), precedence(e.operand()) < 3, out);
      return;
    case Expr::Kind::Pow:
      print_wrapped(e.operand(), precedence(e.operand()) < 5, out);
      out += '^';
      if (e.exponent() < 0) out += "(" + std::to_string(e.exponent()) + ")";
      else out += std::to_string(e.exponent());
      return;
    case Expr::Kind::Call:
      out += func_name(e.func());
      out += '(';
      print(e.operand(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Literal: return a.value() == b.value();
    case Expr::Kind::Variable: return true;
    case Expr::Kind::Neg: return structurally_equal(a.operand(), b.operand());
    case Expr::Kind::Pow:
      return a.exponent() == b.exponent() && structurally_equal(a.operand(), b.operand());
    case Expr::Kind::Call:
      return a.func() == b.func() && structurally_equal(a.operand(), b.operand());
    default:
      return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
  }
}

// ---------------------------------------------------------------- diff

namespace {

class Differentiator {
 public:
  Expr d(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr r = compute(e);
    memo_.emplace(e.id(), r);
    return r;
  }

 private:
  Expr compute(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
      case K::Literal: return Expr::literal(0.0);
      case K::Variable: return Expr::literal(1.0);
      case K::Add: return d(e.lhs()) + d(e.rhs());
      case K::Sub: return d(e.lhs()) - d(e.rhs());
      case K::Mul: return d(e.lhs()) * e.rhs() + e.lhs() * d(e.rhs());
      case K::Div:
        return (d(e.lhs()) * e.rhs() - e.lhs() * d(e.rhs())) / sym::pow(e.rhs(), 2);
      case K::Neg: return -d(e.operand());
      case K::Pow: {
        const int k = e.exponent();
        return Expr::literal(k) * sym::pow(e.operand(), k - 1) * d(e.operand());
      }
      case K::Call: {
        const Expr& u = e.operand();
        const Expr du = d(u);
        if (du.is_literal(0.0)) return du;
        switch (e.func()) {
          case Func::Sin: return sym::cos(u) * du;
          case Func::Cos: return -(sym::sin(u) * du);
          case Func::Tan: return du / sym::pow(sym::cos(u), 2);
          case Func::Sinh: return sym::cosh(u) * du;
          case Func::Cosh: return sym::sinh(u) * du;
          case Func::Tanh: return du / sym::pow(sym::cosh(u), 2);
          case Func::Exp: return e * du;
          case Func::Log: return du / u;
          case Func::Sqrt: return du / (Expr::literal(2.0) * e);
          case Func::Atan: return du / (Expr::literal(1.0) + sym::pow(u, 2));
          case Func::Artanh: return du / (Expr::literal(1.0) - sym::pow(u, 2));
        }
      }
    }
    return Expr::literal(0.0);
  }

  std::unordered_map<const Expr::Node*, Expr> memo_;
};

}  // namespace

Expr diff_expr(const Expr& e, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidInput, "derivative order must be >= 1");
  Differentiator d;
  Expr r = e;
  for (int i = 0; i < order; ++i) r = d.d(r);
  return r;
}

// ---------------------------------------------------------------- program

namespace {

struct Compiler {
  std::unordered_map<const Expr::Node*, int> slot;
  std::vector<std::pair<Expr, std::array<int, 2>>> order;

  int visit(const Expr& e) {
    if (auto it = slot.find(e.id()); it != slot.end()) return it->second;
    std::array<int, 2> args{-1, -1};
    switch (e.kind()) {
      case Expr::Kind::Literal:
      case Expr::Kind::Variable: break;
      case Expr::Kind::Neg:
      case Expr::Kind::Pow:
      case Expr::Kind::Call: args[0] = visit(e.operand()); break;
      default:
        args[0] = visit(e.lhs());
        args[1] = visit(e.rhs());
    }
    const int s = static_cast<int>(order.size());
    order.emplace_back(e, args);
    slot.emplace(e.id(), s);
    return s;
  }
};

}  // namespace

Program::Program(std::span<const Expr> outputs) : roots_(outputs.begin(), outputs.end()) {
  Compiler c;
  for (const Expr& e : roots_) outputs_.push_back(c.visit(e));
  code_.reserve(c.order.size());
  for (const auto& [e, args] : c.order) {
    Op op{e.kind(), Func::Sin, args[0], args[1], 0, 0.0, e.id()};
    if (e.kind() == Expr::Kind::Literal) op.v = e.value();
    if (e.kind() == Expr::Kind::Pow) op.k = e.exponent();
    if (e.kind() == Expr::Kind::Call) op.func = e.func();
    code_.push_back(op);
  }
}

Program::Program(const Expr& e) : Program(std::span<const Expr>(&e, 1)) {}

void Program::run(double t, std::span<double> out) const {
  std::vector<double> r(code_.size());
  auto where = [&](std::size_t i) {
    for (const Expr& root : roots_) {
      // Rebuild the offending subexpression text by searching from the roots.
      std::vector<Expr> stack{root};
      while (!stack.empty()) {
        Expr e = stack.back();
        stack.pop_back();
        if (e.id() == code_[i].src) return to_string(e);
        switch (e.kind()) {
          case Expr::Kind::Literal:
          case Expr::Kind::Variable: break;
          case Expr::Kind::Neg:
          case Expr::Kind::Pow:
          case Expr::Kind::Call: stack.push_back(e.operand()); break;
          default:
            stack.push_back(e.lhs());
            stack.push_back(e.rhs());
        }
      }
    }
    return std::string("?");
  };
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Op& op = code_[i];
    const double x = op.a >= 0 ? r[op.a] : 0.0;
    const double y = op.b >= 0 ? r[op.b] : 0.0;
    switch (op.kind) {
      case Expr::Kind::Literal: r[i] = op.v; break;
      case Expr::Kind::Variable: r[i] = t; break;
      case Expr::Kind::Add: r[i] = x + y; break;
      case Expr::Kind::Sub: r[i] = x - y; break;
      case Expr::Kind::Mul: r[i] = x * y; break;
      case Expr::Kind::Div:
        if (y == 0.0) throw DomainError("division by zero", where(i));
        r[i] = x / y;
        break;
      case Expr::Kind::Neg: r[i] = -x; break;
      case Expr::Kind::Pow:
        if (op.k < 0 && x == 0.0) throw DomainError("division by zero", where(i));
        r[i] = ipow(x, op.k);
        break;
      case Expr::Kind::Call: {
        const char* bad = func_domain_violation(op.func, x);
        if (*bad != '\0') throw DomainError(bad, where(i));
        r[i] = apply_func(op.func, x);
        break;
      }
    }
  }
  for (std::size_t j = 0; j < outputs_.size() && j < out.size(); ++j) out[j] = r[outputs_[j]];
}

std::vector<double> Program::run(double t) const {
  std::vector<double> out(outputs_.size());
  run(t, out);
  return out;
}

double Program::operator()(double t) const {
  double v = 0.0;
  run(t, std::span<double>(&v, 1));
  return v;
}

double eval_expr(const Expr& e, double t) { return Program(e)(t); }

}  // namespace hyperframe
