#include <gtest/gtest.h>

#include "symred/reduction.hpp"
#include "symred/zero.hpp"

using namespace symred;

namespace {

Expr P(const char* s) { return parse_expr(s); }

Metric diag_metric(std::vector<std::string> coords,
                   std::vector<const char*> entries) {
  Metric m;
  m.chart.coords = std::move(coords);
  const std::size_t n = entries.size();
  m.g.assign(n, std::vector<Expr>(n, Expr(0)));
  for (std::size_t i = 0; i < n; ++i) m.g[i][i] = P(entries[i]);
  return m;
}

PointGenerator G(const std::vector<std::string>& coords,
                 std::vector<const char*> xi, const char* a = "0") {
  std::vector<Expr> x;
  for (const char* s : xi) x.push_back(P(s));
  return make_generator("", coords, x, P(a));
}

bool same(const Expr& a, const Expr& b) {
  return zero_normal_form(a - b).is_zero();
}

void expect_coeffs(const QuasiLinearPDE& p, std::vector<std::vector<const char*>> A,
                   std::vector<const char*> B, const char* f) {
  ASSERT_EQ(p.dim(), B.size());
  for (std::size_t i = 0; i < B.size(); ++i) {
    EXPECT_TRUE(same(p.B[i], P(B[i]))) << i << ": " << p.B[i];
    for (std::size_t j = 0; j < B.size(); ++j)
      EXPECT_TRUE(same(p.A[i][j], P(A[i][j]))) << i << j << ": " << p.A[i][j];
  }
  EXPECT_TRUE(same(p.f, P(f))) << p.f;
}

const std::vector<std::string> kTXYZ{"t", "x", "y", "z"};

}  // namespace

TEST(Reduction, GaussianInvariants) {
  const auto ch = invariants_for(G(kTXYZ, {"0", "t", "0", "0"}, "-x/2"),
                                 {"tau", "y", "z"});
  EXPECT_EQ(ch.eliminated, "x");
  EXPECT_EQ(ch.invariants, (std::vector<Expr>{P("t"), P("y"), P("z")}));
  EXPECT_TRUE(same(Expr(1) / ch.mu, P("exp(x^2/(4*t))")));
  EXPECT_TRUE(verify_invariants(G(kTXYZ, {"0", "t", "0", "0"}, "-x/2"), ch).ok);
}

TEST(Reduction, TranslationKeepsNames) {
  const auto ch = invariants_for(G(kTXYZ, {"0", "1", "0", "0"}));
  EXPECT_EQ(ch.new_coords, (std::vector<std::string>{"t", "y", "z"}));
  EXPECT_TRUE(ch.mu.is_one());
}

TEST(Reduction, DilationInvariant) {
  const std::vector<std::string> c{"t", "r", "y"};
  const auto ch = invariants_for(G(c, {"2*t", "r", "0"}), {"phi", "y"});
  EXPECT_EQ(ch.eliminated, "t");
  EXPECT_TRUE(same(ch.invariants[0], P("r/sqrt(t)")));
  EXPECT_TRUE(ch.mu.is_one());
}

TEST(Reduction, VerifySuppliedInvariants) {
  const std::vector<std::string> c{"t", "r", "y1", "y2", "y3"};
  const auto g = G(c, {"t^2", "t*r", "0", "0", "0"}, "-(r^2/4 + 2*t)");
  InvariantChart ch;
  ch.old_coords = c;
  ch.eliminated = "t";
  ch.new_coords = {"phi", "y1", "y2", "y3"};
  ch.invariants = {P("r/t"), P("y1"), P("y2"), P("y3")};
  ch.mu = P("t^(-2)*exp(-r^2/(4*t))");
  EXPECT_TRUE(verify_invariants(g, ch).ok);
  ch.invariants[0] = P("r*t");
  EXPECT_FALSE(verify_invariants(g, ch).ok);

  const auto derived = invariants_for(g, {"phi", "y1", "y2", "y3"});
  EXPECT_TRUE(same(derived.invariants[0], P("r/t")));
  EXPECT_TRUE(same(derived.mu, P("t^(-2)*exp(-r^2/(4*t))")));

  InvariantChart id;
  id.old_coords = c;
  id.invariants = {P("r"), P("y1")};
  EXPECT_TRUE(verify_invariants(G(c, {"0", "0", "0", "0", "0"}), id).ok);
}

TEST(Reduction, NonTriangularSystemIsUnsupported) {
  const std::vector<std::string> c{"x", "y"};
  EXPECT_THROW(invariants_for(G(c, {"y^2", "x^2"})), UnsupportedGenerator);
}

TEST(Reduction, DecomposableByTranslation) {
  const auto p = heat_pde(diag_metric({"x", "y", "z"}, {"1", "1", "1"}));
  const auto g = G(kTXYZ, {"0", "1", "0", "0"});
  const auto r = reduce_pde(p, g, invariants_for(g));
  expect_coeffs(r.pde, {{"0", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}},
                {"1", "0", "0"}, "0");
  EXPECT_EQ(r.pde.evolution, std::optional<std::size_t>(0));
}

TEST(Reduction, DecomposableByGaussianGivesFlux) {
  const auto p = heat_pde(diag_metric({"x", "y", "z"}, {"1", "1", "1"}));
  const auto g = G(kTXYZ, {"0", "t", "0", "0"}, "-x/2");
  const auto r = reduce_pde(p, g, invariants_for(g, {"tau", "y", "z"}));
  expect_coeffs(r.pde, {{"0", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}},
                {"1", "0", "0"}, "w/(2*tau)");
  EXPECT_EQ(r.pde.evolution, std::optional<std::size_t>(0));
}

TEST(Reduction, CurvedFactorKeepsItsChristoffelTerm) {
  const auto p = heat_pde(diag_metric({"x", "y", "z"}, {"1", "1", "sin(y)^2"}));
  const auto g = G(kTXYZ, {"0", "t", "0", "0"}, "-x/2");
  const auto r = reduce_pde(p, g, invariants_for(g, {"tau", "y", "z"}));
  expect_coeffs(r.pde,
                {{"0", "0", "0"}, {"0", "1", "0"}, {"0", "0", "sin(y)^(-2)"}},
                {"1", "-cos(y)/sin(y)", "0"}, "w/(2*tau)");
}

TEST(Reduction, FrwBySpecialConformalGenerator) {
  const Metric m = diag_metric({"sigma", "x", "y", "z"},
                               {"1", "-sigma^2", "-sigma^2", "-sigma^2"});
  const auto p = heat_pde(m);
  const std::vector<std::string> c{"t", "sigma", "x", "y", "z"};
  const auto g = G(c, {"t^2", "t*sigma", "0", "0", "0"}, "-(sigma^2/4 + 2*t)");
  const auto ch = invariants_for(g, {"phi", "x", "y", "z"});
  EXPECT_TRUE(same(ch.invariants[0], P("sigma/t")));
  const auto r = reduce_pde(p, g, ch);
  expect_coeffs(r.pde,
                {{"1", "0", "0", "0"},
                 {"0", "-phi^(-2)", "0", "0"},
                 {"0", "0", "-phi^(-2)", "0"},
                 {"0", "0", "0", "-phi^(-2)"}},
                {"-3/phi", "0", "0", "0"}, "0");
  EXPECT_FALSE(r.pde.evolution.has_value());
}

TEST(Reduction, FrwByDilation) {
  const Metric m = diag_metric({"sigma", "x", "y", "z"},
                               {"1", "-sigma^2", "-sigma^2", "-sigma^2"});
  const auto p = heat_pde(m);
  const std::vector<std::string> c{"t", "sigma", "x", "y", "z"};
  const auto g = G(c, {"2*t", "sigma", "0", "0", "0"});
  const auto r = reduce_pde(p, g, invariants_for(g, {"phi", "x", "y", "z"}));
  expect_coeffs(r.pde,
                {{"1", "0", "0", "0"},
                 {"0", "-phi^(-2)", "0", "0"},
                 {"0", "0", "-phi^(-2)", "0"},
                 {"0", "0", "0", "-phi^(-2)"}},
                {"-3/phi - phi/2", "0", "0", "0"}, "0");
}

TEST(Reduction, GeneratorScaleInvariance) {
  const auto p = heat_pde(diag_metric({"x", "y", "z"}, {"1", "1", "1"}));
  const auto g = G(kTXYZ, {"0", "t", "0", "0"}, "-x/2");
  const auto ch = invariants_for(g, {"tau", "y", "z"});
  const auto r1 = reduce_pde(p, g, ch);
  const auto r2 = reduce_pde(p, Expr(Rational(-3, 7)) * g, ch);
  EXPECT_TRUE(same_pde_up_to_scale(r1.pde, r2.pde));
  const auto r3 = reduce_pde(p, Expr(5) * g, invariants_for(Expr(5) * g, {"tau", "y", "z"}));
  EXPECT_TRUE(same_pde_up_to_scale(r1.pde, r3.pde));
}

TEST(Reduction, ChartMismatchIsRejected) {
  const auto p = heat_pde(diag_metric({"x", "y", "z"}, {"1", "1", "1"}));
  const auto g = G(kTXYZ, {"0", "t", "0", "0"}, "-x/2");
  auto ch = invariants_for(g);
  ch.invariants[0] = P("t*x");
  EXPECT_THROW(reduce_pde(p, g, ch), std::runtime_error);
}

namespace {

// A^ij u_ij - B^i u_i with A = diag(1, 1/φ², ...) and B^φ = -(n-1)/φ - φ/2
QuasiLinearPDE dilation_reduced(int n) {
  QuasiLinearPDE p;
  p.coords.push_back("phi");
  for (int k = 1; k < n; ++k) p.coords.push_back("y" + std::to_string(k));
  p.A.assign(n, std::vector<Expr>(n, Expr(0)));
  p.A[0][0] = Expr(1);
  for (int k = 1; k < n; ++k) p.A[k][k] = P("phi^(-2)");
  p.B.assign(n, Expr(0));
  p.B[0] = -Expr(n - 1) / sym("phi") - sym("phi") / Expr(2);
  p.f = Expr(0);
  return p;
}

}  // namespace

TEST(Reduction, LaplaceFormOfTheDilationReduction) {
  const auto p = dilation_reduced(4);
  const auto lf = laplace_form_detect(p);
  ASSERT_TRUE(lf.has_value());
  EXPECT_TRUE(same(lf->N2, P("exp(phi^2/4)"))) << lf->N2;
  EXPECT_TRUE(same(lf->metric.g[0][0], P("exp(phi^2/4)")));
  EXPECT_TRUE(same(lf->metric.g[1][1], P("phi^2*exp(phi^2/4)")));

  const auto lf5 = laplace_form_detect(dilation_reduced(5));
  ASSERT_TRUE(lf5.has_value());
  EXPECT_TRUE(same(lf5->N2, P("exp(phi^2/6)"))) << lf5->N2;
}

TEST(Reduction, LaplaceFormRoundTrip) {
  const auto p = dilation_reduced(4);
  const auto lf = laplace_form_detect(p);
  ASSERT_TRUE(lf.has_value());
  const auto back = laplace_pde(lf->metric);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    EXPECT_TRUE(same(back.B[i] * lf->N2, p.B[i]));
    for (std::size_t j = 0; j < p.dim(); ++j)
      EXPECT_TRUE(same(back.A[i][j] * lf->N2, p.A[i][j]));
  }
}

TEST(Reduction, LaplaceFormOfALaplaceEquationIsTrivial) {
  const auto p = laplace_pde(diag_metric({"phi", "x", "y", "z"},
                                         {"1", "-phi^2", "-phi^2", "-phi^2"}));
  const auto lf = laplace_form_detect(p);
  ASSERT_TRUE(lf.has_value());
  EXPECT_TRUE(lf->N2.is_one());
}

TEST(Reduction, LaplaceFormRefusals) {
  std::string why;
  EXPECT_FALSE(laplace_form_detect(dilation_reduced(2), &why).has_value());
  EXPECT_NE(why.find("dimension"), std::string::npos);
  EXPECT_FALSE(
      laplace_form_detect(heat_pde(diag_metric({"x", "y", "z"}, {"1", "1", "1"})))
          .has_value());
  auto p = dilation_reduced(3);
  p.B[1] = P("phi");  // not a gradient
  EXPECT_FALSE(laplace_form_detect(p).has_value());
}
