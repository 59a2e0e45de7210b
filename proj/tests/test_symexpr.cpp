#include "hyperframe/error.hpp"
#include "hyperframe/expr.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hyperframe;

TEST(Parse, Literal) {
  const Expr e = parse_expr("2");
  EXPECT_EQ(e.kind(), Expr::Kind::Literal);
  EXPECT_EQ(e.value(), 2.0);
}

TEST(Parse, SumOfCallAndPower) {
  const Expr e = parse_expr("sinh(t)+t^2");
  ASSERT_EQ(e.kind(), Expr::Kind::Add);
  EXPECT_EQ(e.lhs().kind(), Expr::Kind::Call);
  EXPECT_EQ(e.lhs().func(), Func::Sinh);
  EXPECT_EQ(e.rhs().kind(), Expr::Kind::Pow);
  EXPECT_EQ(e.rhs().exponent(), 2);
}

TEST(Parse, NonIntegerExponentRejected) {
  try {
    parse_expr("t^(1/2)");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonIntegerExponent);
  }
}

TEST(Parse, ErrorsCarryColumn) {
  try {
    parse_expr("1 + * t");
    FAIL() << "expected an error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_GT(e.column(), 0u);
  }
  try {
    parse_expr("foo(t)");
    FAIL() << "expected an error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownIdentifier);
  }
}

TEST(Parse, PrecedenceOfPowerOverUnaryMinus) {
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("-t^2"), 3.0), -9.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("2*t^2 - 3/t"), 2.0), 6.5);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("t^(-2)"), 2.0), 0.25);
}

TEST(Print, RoundTripsThroughParser) {
  for (const char* src : {"sinh(t)+t^2", "-t^2", "(1 + t)*(2 - t)/(3 + t^2)", "t^(-3) - cos(2*t)",
                          "atan(t) - artanh(t/4)", "exp(-t)*log(1 + t^2)", "1 - (t - 2)"}) {
    const Expr e = parse_expr(src);
    const Expr back = parse_expr(to_string(e));
    for (double t : {0.3, 0.7, 1.3})
      EXPECT_DOUBLE_EQ(eval_expr(e, t), eval_expr(back, t)) << src << " printed as " << to_string(e);
  }
}

TEST(Diff, Examples) {
  EXPECT_DOUBLE_EQ(eval_expr(diff_expr(parse_expr("t^3"), 2), 2.0), 12.0);
  EXPECT_DOUBLE_EQ(eval_expr(diff_expr(parse_expr("sinh(t)")), 0.0), 1.0);
  EXPECT_NEAR(eval_expr(diff_expr(parse_expr("cosh(t)")), 1.0), 1.1752011936438014, 1e-15);
  EXPECT_THROW(diff_expr(parse_expr("t"), 0), Error);
}

TEST(Diff, MatchesCentralDifferences) {
  const char* pool[] = {"sin(t)*cosh(t)", "t^3 - 2*t + 1", "exp(t/3)/(2 + t^2)", "atan(t)*t",
                        "sqrt(4 + t^2)", "log(2 + sin(t))", "tanh(t) + tan(t/4)", "artanh(t/3)",
                        "(1 + t)^(-2)", "cos(t^2)"};
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 100; ++i) {
    const Expr e = parse_expr(pool[i % 10]);
    const double t = u(rng);
    const double h = 1e-5;
    const double fd = (eval_expr(e, t + h) - eval_expr(e, t - h)) / (2 * h);
    const double d = eval_expr(diff_expr(e), t);
    EXPECT_LE(std::abs(d - fd), 1e-6 * std::max(1.0, std::abs(fd))) << pool[i % 10] << " at " << t;
  }
}

TEST(Eval, DomainErrorsNameTheSubexpression) {
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("cosh(t)"), 0.0), 1.0);
  try {
    eval_expr(parse_expr("1/t"), 0.0);
    FAIL() << "expected an error";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
    EXPECT_FALSE(e.subexpression().empty());
  }
  EXPECT_THROW(eval_expr(parse_expr("log(t)"), 0.0), DomainError);
  EXPECT_THROW(eval_expr(parse_expr("sqrt(t)"), -1.0), DomainError);
  EXPECT_THROW(eval_expr(parse_expr("artanh(t)"), 1.0), DomainError);
  EXPECT_THROW(eval_expr(parse_expr("t^(-1)"), 0.0), DomainError);
}

TEST(Simplify, IdentitiesFold) {
  const Expr t = Expr::variable();
  EXPECT_TRUE((t * Expr::literal(0.0)).is_literal(0.0));
  EXPECT_TRUE(structurally_equal(t * Expr::literal(1.0), t));
  EXPECT_TRUE((Expr::literal(2.0) + Expr::literal(3.0)).is_literal(5.0));
  EXPECT_TRUE(diff_expr(parse_expr("7")).is_literal(0.0));
}

TEST(ProgramTape, AgreesWithTreeEvaluation) {
  const std::vector<Expr> outs = {parse_expr("sin(t)^2 + cos(t)^2"), diff_expr(parse_expr("t^4*exp(t)"), 3),
                                  parse_expr("sqrt(1 + t^2)")};
  const Program p(outs);
  EXPECT_EQ(p.outputs(), 3u);
  for (double t : {-1.0, 0.0, 0.5, 2.0}) {
    const auto v = p.run(t);
    for (std::size_t k = 0; k < outs.size(); ++k) EXPECT_DOUBLE_EQ(v[k], eval_expr(outs[k], t));
  }
}
