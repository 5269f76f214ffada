#include <gtest/gtest.h>

#include "symred/numcheck.hpp"
#include "symred/zero.hpp"

using namespace symred;

namespace {
Expr P(const char* s) { return parse_expr(s); }
}  // namespace

TEST(NumCheck, ZeroResidualIsExactlyZero) {
  const auto rep = max_abs_residual({Expr(0)}, SampleConfig{});
  EXPECT_EQ(rep.max_abs, 0.0);
}

TEST(NumCheck, WitnessOfNonZero) {
  SampleConfig cfg;
  cfg.box["x"] = {1, 2};
  const auto rep = max_abs_residual({P("1/x")}, cfg);
  EXPECT_GT(rep.max_abs, 0.5);
  EXPECT_EQ(rep.points, cfg.samples);
  ASSERT_TRUE(rep.worst.count("x"));
  EXPECT_NEAR(1.0 / rep.worst.at("x"), rep.max_abs, 1e-12);
}

TEST(NumCheck, ReportsAreSeedDeterministic) {
  SampleConfig cfg;
  cfg.seed = 99;
  const std::vector<Expr> es{P("x*sin(y) - exp(z/3)"), P("ln(x+y)")};
  const auto a = max_abs_residual(es, cfg);
  const auto b = max_abs_residual(es, cfg);
  EXPECT_EQ(a.max_abs, b.max_abs);
  EXPECT_EQ(a.worst, b.worst);
  cfg.seed = 100;
  EXPECT_NE(max_abs_residual(es, cfg).max_abs, a.max_abs);
}

TEST(NumCheck, FiniteDifferences) {
  SampleConfig cfg;
  cfg.samples = 20;
  EXPECT_LT(fd_derivative_check(P("x^3"), "x", cfg), 1e-8);
  cfg.box["phi"] = {0.1, 3};
  EXPECT_LT(fd_derivative_check(P("exp(phi^2/4)"), "phi", cfg), 1e-6);
  cfg.box["x"] = {1e-3, 1};
  EXPECT_LT(fd_derivative_check(P("ln(x)"), "x", cfg), 1e-6);
}

TEST(NumCheck, PoleBeyondRetryBudget) {
  SampleConfig cfg;
  cfg.retries = 3;
  EXPECT_THROW(max_abs_residual({P("ln(-1 - x^2)")}, cfg), PoleError);
}

TEST(ZeroTest, Verdicts) {
  EXPECT_EQ(is_zero_expr(Expr(0)).verdict, ZeroVerdict::Zero);
  EXPECT_EQ(is_zero_expr(P("sin(x)^2 + cos(x)^2 - 1")).verdict,
            ZeroVerdict::Zero);
  SampleConfig cfg;
  cfg.box["x"] = {1, 2};
  EXPECT_EQ(is_zero_expr(P("1/x"), cfg).verdict, ZeroVerdict::NonZero);
  cfg.box["x"] = {0, 10};
  EXPECT_EQ(is_zero_expr(P("2*ln(x) - ln(x^2)"), cfg).verdict,
            ZeroVerdict::Zero);
  EXPECT_EQ(is_zero_expr(P("1/(x+1) + 1/(x-1) - 2*x/(x^2-1)"), cfg).verdict,
            ZeroVerdict::Zero);
  EXPECT_EQ(is_zero_expr(P("tan(x)^2 + 1 - 1/cos(x)^2"), cfg).verdict,
            ZeroVerdict::Zero);
}

TEST(ZeroTest, UnknownWhenOnlyNumericallyZero) {
  // exp(ln(x)+ln(y)) stays distinct from x*y without log expansion of the
  // argument; the symbolic pass expands it, so use a genuinely opaque form.
  SampleConfig cfg;
  const auto r = is_zero_expr(P("sin(2*x) - 2*sin(x)*cos(x)"), cfg);
  EXPECT_EQ(r.verdict, ZeroVerdict::Unknown);
  EXPECT_TRUE(r.numerically_zero);
}
