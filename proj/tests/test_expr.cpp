#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symred/expr.hpp"

using namespace symred;

namespace {

Expr P(const char* s) { return parse_expr(s); }

}  // namespace

TEST(Expr, ParseBuildsCanonicalTrees) {
  const Expr x = sym("x"), t = sym("t");
  EXPECT_EQ(P("x^2 * exp(t)"), pow(x, Rational(2)) * exp(t));
  EXPECT_EQ(P("1/2*r^2"), Expr(Rational(1, 2)) * pow(sym("r"), Rational(2)));
  const Expr l = P("ln(x^2+y^2)");
  ASSERT_EQ(l.kind(), Kind::Function);
  EXPECT_EQ(l.func(), Func::Ln);
  EXPECT_EQ(l.arg(), x * x + sym("y") * sym("y"));
}

TEST(Expr, ParseErrors) {
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("foo(x)"), ParseError);
  EXPECT_THROW(P("1/0"), ParseError);
  EXPECT_THROW(P("x/0"), ParseError);
  try {
    P("x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Expr, ConventionalPrecedence) {
  EXPECT_EQ(P("2/3^2"), Expr(Rational(2, 9)));
  EXPECT_EQ(P("x^2/4"), Expr(Rational(1, 4)) * P("x*x"));
  EXPECT_EQ(P("x^-2"), P("1/x^2"));
  EXPECT_EQ(P("-x^2"), -P("x^2"));
  EXPECT_EQ(P("2^3^2"), Expr(512));
}

TEST(Expr, Normalization) {
  EXPECT_EQ(P("x + x"), P("2*x"));
  EXPECT_EQ(P("exp(phi^2/4)*exp(-phi^2/4)"), Expr(1));
  EXPECT_EQ(P("exp(a)*exp(b)"), P("exp(a+b)"));
  EXPECT_EQ(P("(x+1)^2"), P("x^2 + 2*x + 1"));
  EXPECT_EQ(P("(x+1)/(x+1)"), Expr(1));
  EXPECT_EQ(P("sqrt(8)"), P("2*2^(1/2)"));
  EXPECT_EQ(P("sqrt(x)*sqrt(x)"), P("x"));
  EXPECT_EQ(P("exp(2*ln(x))"), P("x^2"));
  EXPECT_EQ(P("ln(exp(x+y))"), P("x+y"));
  EXPECT_EQ(P("sin(-x)"), P("-sin(x)"));
  EXPECT_EQ(P("cos(-x)"), P("cos(x)"));
  EXPECT_EQ(P("1/(2*x+4)"), P("(1/4)/(1 + x/2)"));
  // ln of products is not expanded by default
  EXPECT_NE(P("2*ln(x) - ln(x^2)"), Expr(0));
  NormalizeOptions o;
  o.expand_logs = true;
  EXPECT_EQ(normalize(P("2*ln(x) - ln(x^2)"), o), Expr(0));
  EXPECT_EQ(normalize(P("ln(4*x^3*y) - 2*ln(2) - 3*ln(x) - ln(y)"), o),
            Expr(0));
  EXPECT_EQ(normalize(P("ln(x^2 + x*y) - ln(x) - ln(x+y)"), o), Expr(0));
}

TEST(Expr, NormalizeIsIdempotentAndACongruence) {
  const char* corpus[] = {"x^2*exp(t)/(4*t)", "ln(x^2+y^2)*sqrt(rho)",
                          "(1 + K*(y^2+z^2)/4)^(-2)", "sin(x)^2 + cos(x)^2",
                          "exp(-x^2/(4*t))*t^(-1/2)"};
  NormalizeOptions o;
  o.expand_logs = true;
  o.trig_to_sin = true;
  for (const char* a : corpus) {
    for (const char* b : corpus) {
      const Expr ea = P(a), eb = P(b);
      EXPECT_EQ(normalize(ea), ea);
      EXPECT_EQ(normalize(normalize(ea, o), o), normalize(ea, o)) << a;
      EXPECT_EQ(normalize(ea + eb), normalize(ea) + normalize(eb));
    }
  }
}

TEST(Expr, Differentiate) {
  EXPECT_EQ(differentiate(P("x^2*exp(t)"), "x"), P("2*x*exp(t)"));
  EXPECT_EQ(differentiate(P("exp(phi^2/4)"), "phi"), P("phi/2*exp(phi^2/4)"));
  EXPECT_EQ(differentiate(P("x^2/(4*t)"), "t"), P("-x^2/(4*t^2)"));
  EXPECT_EQ(differentiate(P("ln(x^2+y^2)"), "x"), P("2*x/(x^2+y^2)"));
  EXPECT_EQ(differentiate(P("tan(x)"), "x"), P("1 + tan(x)^2"));
  EXPECT_EQ(differentiate(P("x^n"), "x"), P("n*x^n/x"));
}

TEST(Expr, DifferentiateMatchesFiniteDifferences) {
  const Expr e = P("x^2/(4*t)");
  const Expr d = differentiate(e, "t");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.5, 2.0);
  for (int i = 0; i < 10; ++i) {
    NumericBinding b{{"x", U(rng)}, {"t", U(rng)}};
    const double h = 1e-5;
    auto bp = b, bm = b;
    bp["t"] += h;
    bm["t"] -= h;
    const double fd = (evaluate(e, bp) - evaluate(e, bm)) / (2 * h);
    const double ex = evaluate(d, b);
    EXPECT_LT(std::abs(fd - ex) / std::max(1.0, std::abs(ex)), 1e-6);
  }
}

TEST(Expr, Substitute) {
  const Expr u = P("w*exp(-x^2/(4*t))");
  EXPECT_EQ(substitute(u, {{"w", Expr(1)}}), P("exp(-x^2/(4*t))"));
  EXPECT_EQ(substitute(P("x+y"), {}), P("x+y"));
  EXPECT_EQ(substitute(P("r/sqrt(t)"), {{"r", P("phi*sqrt(t)")}}), P("phi"));
  // simultaneous, not sequential
  EXPECT_EQ(substitute(P("x + 2*y"), {{"x", P("y")}, {"y", P("x")}}),
            P("y + 2*x"));
}

TEST(Expr, Collect) {
  auto c = collect_coefficients(P("a*u + b"), {"u"});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at(P("u")), P("a"));
  EXPECT_EQ(c.at(Expr(1)), P("b"));
  c = collect_coefficients(Expr(3), {"u"});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.at(Expr(1)), Expr(3));
  c = collect_coefficients(P("x*u^2 + 2*u^2"), {"u"});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.at(P("u^2")), P("x + 2"));
  EXPECT_THROW(collect_coefficients(P("exp(u)"), {"u"}), NotPolynomialError);
  EXPECT_THROW(collect_coefficients(P("1/u"), {"u"}), NotPolynomialError);
}

TEST(Expr, PrintRoundTrip) {
  const char* corpus[] = {
      "x^2 * exp(t)", "1/2*r^2", "ln(x^2+y^2)", "-x^2", "-(x^2)/2",
      "x^2/(4*t)", "-2*x/t^(1/2)", "(1 + K*(y^2+z^2)/4)^(-2)",
      "x^(-2/3)", "-x^(4/3)", "sqrt(2)*x", "-sqrt(3)*exp(x)", "2^x",
      "x^y^2", "(-2)^(1/2)", "exp(-x^2/(4*t))*t^(-1/2)",
      "1/(x*y)", "-1/(x+y)", "-(x+y)^(-1/2)", "(v + rho*ln(t)/2)/t^(1/2)",
      "ln(x)^2 - 2*ln(x)*sin(y)", "tan(x)/cos(x)^2", "3/2", "-3/2",
      "-x", "1/x^2", "(x^y)^2"};
  for (const char* s : corpus) {
    const Expr e = P(s);
    const std::string printed = print_expr(e);
    EXPECT_EQ(P(printed.c_str()), e) << s << " printed as " << printed;
  }
  EXPECT_EQ(print_expr(P("x^2*exp(t)")), "x^2*exp(t)");
  EXPECT_EQ(print_expr(P("x^2/(4*t)")), "x^2/(4*t)");
  EXPECT_EQ(print_expr(P("sqrt(x)")), "x^(1/2)");
}
