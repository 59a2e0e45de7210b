#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperframe {

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Atan, Artanh };

const char* func_name(Func f);

// Immutable expression tree in the single variable t. Literals are never
// negative; a negative constant is Neg(Literal). A default Expr is literal 0.
class Expr {
 public:
  enum class Kind { Literal, Variable, Add, Sub, Mul, Div, Neg, Pow, Call };
  struct Node;

  Expr();
  static Expr literal(double v);
  static Expr variable();

  // Unsimplified constructors, used by the parser.
  static Expr raw_binary(Kind k, Expr lhs, Expr rhs);
  static Expr raw_neg(Expr operand);
  static Expr raw_pow(Expr base, int exponent);
  static Expr raw_call(Func f, Expr arg);
  static Expr raw_literal(double v);

  Kind kind() const;
  double value() const;
  int exponent() const;
  Func func() const;
  const Expr& lhs() const;
  const Expr& rhs() const;
  const Expr& operand() const;

  bool is_literal(double v) const;
  const Node* id() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(double s, const Expr& a);

namespace sym {
Expr pow(const Expr& base, int exponent);
Expr call(Func f, const Expr& arg);
Expr sqrt(const Expr& x);
Expr sin(const Expr& x);
Expr cos(const Expr& x);
Expr sinh(const Expr& x);
Expr cosh(const Expr& x);
Expr atan(const Expr& x);
Expr artanh(const Expr& x);
}  // namespace sym

Expr parse_expr(std::string_view source);
Expr diff_expr(const Expr& e, int order = 1);
double eval_expr(const Expr& e, double t);
std::string to_string(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

// Several expressions flattened into one instruction tape; shared
// subexpressions are evaluated once.
class Program {
 public:
  Program() = default;
  explicit Program(std::span<const Expr> outputs);
  explicit Program(const Expr& e);

  std::size_t outputs() const { return outputs_.size(); }
  std::size_t size() const { return code_.size(); }

  void run(double t, std::span<double> out) const;
  std::vector<double> run(double t) const;
  double operator()(double t) const;

 private:
  struct Op {
    Expr::Kind kind;
    Func func;
    int a;
    int b;
    int k;
    double v;
    const Expr::Node* src;
  };
  std::vector<Op> code_;
  std::vector<int> outputs_;
  std::vector<Expr> roots_;
};

}  // namespace hyperframe
