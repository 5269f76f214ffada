#include <gtest/gtest.h>

#include "symred/geometry.hpp"

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

Metric frw() {
  return diag_metric({"sigma", "x", "y", "z"},
                     {"1", "-sigma^2", "-sigma^2", "-sigma^2"});
}

Metric petrov_n() {
  Metric m;
  m.chart.coords = {"x", "y", "rho", "v"};
  m.g.assign(4, std::vector<Expr>(4, Expr(0)));
  m.g[0][0] = Expr(1);
  m.g[1][1] = P("x^2");
  m.g[2][2] = P("ln(x^2)");
  m.g[2][3] = m.g[3][2] = Expr(1);
  return m;
}

VectorField V(std::vector<const char*> xs) {
  VectorField v;
  for (const char* s : xs) v.xi.push_back(P(s));
  return v;
}

bool is_zero_matrix(const Matrix& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!zero_normal_form(e).is_zero()) return false;
  return true;
}

}  // namespace

TEST(Geometry, InverseMetricMultipliesBack) {
  for (const Metric& m : {frw(), petrov_n(), diag_metric({"x", "y"}, {"1", "1"})}) {
    const Matrix gi = inverse_metric(m);
    const Matrix prod = multiply(gi, m.g);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j)
        EXPECT_EQ(zero_normal_form(prod[i][j] - Expr(i == j ? 1 : 0)), Expr(0));
  }
  const Matrix gi = inverse_metric(frw());
  EXPECT_EQ(gi[1][1], P("-1/sigma^2"));
  const Matrix ni = inverse_metric(petrov_n());
  EXPECT_EQ(ni[2][2], Expr(0));
  EXPECT_EQ(ni[2][3], Expr(1));
  EXPECT_EQ(ni[3][3], -P("ln(x^2)"));
}

TEST(Geometry, SphereChristoffel) {
  Metric m = diag_metric({"th", "ph"}, {"1", "sin(th)^2"});
  m.chart.box["th"] = {0.3, 1.2};
  const auto G = christoffel(m);
  EXPECT_EQ(zero_normal_form(G[0][1][1] + P("sin(th)*cos(th)")), Expr(0));
  EXPECT_EQ(zero_normal_form(G[1][0][1] - P("cos(th)/sin(th)")), Expr(0));
  EXPECT_EQ(G[1][0][1], G[1][1][0]);
  EXPECT_EQ(G[0][0][0], Expr(0));
}

TEST(Geometry, FrwContractedChristoffel) {
  const auto g = contracted_christoffel(frw());
  EXPECT_EQ(g[0], P("-3/sigma"));
  const QuasiLinearPDE p = heat_pde(frw());
  EXPECT_EQ(p.coords.front(), "t");
  EXPECT_EQ(p.B[1], P("-3/sigma"));
  EXPECT_EQ(p.A[2][2], P("-1/sigma^2"));
  EXPECT_EQ(p.B[0], Expr(1));
}

TEST(Geometry, DecomposableFlatHeatOperator) {
  const QuasiLinearPDE p = heat_pde(diag_metric({"x", "y", "z"}, {"1", "1", "1"}));
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(p.A[i][i], Expr(1));
    EXPECT_EQ(p.B[i], Expr(0));
  }
  EXPECT_EQ(describe(p), "-u_t + u_xx + u_yy + u_zz = 0");
}

TEST(Geometry, MetricCompatibility) {
  Metric sphere = diag_metric({"th", "ph"}, {"1", "sin(th)^2"});
  sphere.chart.box["th"] = {0.3, 1.2};
  for (const Metric& m : {frw(), petrov_n(), sphere}) {
    const auto G = christoffel(m);
    const std::size_t n = m.dim();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Expr r = differentiate(m.g[i][j], m.chart.coords[k]);
          for (std::size_t l = 0; l < n; ++l)
            r -= G[l][k][i] * m.g[l][j] + G[l][k][j] * m.g[i][l];
          EXPECT_EQ(zero_normal_form(r), Expr(0));
        }
  }
}

TEST(Geometry, LieDerivative) {
  const Metric flat = diag_metric({"x", "y"}, {"1", "1"});
  const Matrix L = lie_derivative_metric(V({"x", "0"}), flat);
  EXPECT_EQ(L[0][0], Expr(2));
  EXPECT_EQ(L[1][1], Expr(0));
  const Metric f = frw();
  const Matrix H = lie_derivative_metric(V({"sigma", "0", "0", "0"}), f);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(H[i][i], Expr(2) * f.g[i][i]);
  const Metric dec = diag_metric({"x", "y", "z"}, {"1", "1", "1"});
  EXPECT_TRUE(is_zero_matrix(lie_derivative_metric(V({"1", "0", "0"}), dec)));
}

TEST(Geometry, ClassifyCollineation) {
  auto c = classify_collineation(V({"sigma", "0", "0", "0"}), frw());
  EXPECT_EQ(c.kind, CollineationKind::HV);
  EXPECT_EQ(c.psi, Expr(1));
  EXPECT_EQ(c.gradient, Tri::Yes);
  c = classify_collineation(V({"0", "1", "0", "0"}), petrov_n());
  EXPECT_EQ(c.kind, CollineationKind::KV);
  c = classify_collineation(V({"x", "y"}), diag_metric({"x", "y"}, {"1", "1"}));
  EXPECT_EQ(c.kind, CollineationKind::HV);
  EXPECT_EQ(c.psi, Expr(1));
  c = classify_collineation(V({"x", "0"}), diag_metric({"x", "y"}, {"1", "1"}));
  EXPECT_EQ(c.kind, CollineationKind::NotConformal);
  // special conformal vector of the plane
  c = classify_collineation(V({"x^2 - y^2", "2*x*y"}),
                           diag_metric({"x", "y"}, {"1", "1"}));
  EXPECT_EQ(c.kind, CollineationKind::CKV);
  EXPECT_EQ(c.psi, P("2*x"));
}

TEST(Geometry, KvIffLieDerivativeVanishes) {
  const Metric m = petrov_n();
  for (const auto& v : {V({"0", "0", "1", "0"}), V({"0", "0", "0", "1"}),
                        V({"x", "0", "rho", "v - rho"}), V({"x", "0", "0", "0"})}) {
    const bool kv = classify_collineation(v, m).kind == CollineationKind::KV;
    EXPECT_EQ(kv, is_zero_matrix(lie_derivative_metric(v, m)));
  }
}

TEST(Geometry, GradientPotential) {
  Metric polar = diag_metric({"r", "y"}, {"1", "r^2"});
  auto s = gradient_potential(V({"r", "0"}), polar);
  ASSERT_TRUE(s.S);
  EXPECT_EQ(*s.S, P("r^2/2"));
  const Metric dec = diag_metric({"x", "y", "z"}, {"1", "1", "1"});
  s = gradient_potential(V({"1", "0", "0"}), dec);
  ASSERT_TRUE(s.S);
  EXPECT_EQ(*s.S, P("x"));
  s = gradient_potential(V({"y", "-x"}), diag_metric({"x", "y"}, {"1", "1"}));
  EXPECT_FALSE(s.S);
  EXPECT_FALSE(s.diagnostic.empty());
  s = gradient_potential(V({"sigma", "0", "0", "0"}), frw());
  ASSERT_TRUE(s.S);
  EXPECT_EQ(*s.S, P("sigma^2/2"));
}

TEST(Geometry, ConformalTransport) {
  const Chart c{{"phi", "x"}, {}};
  EXPECT_EQ(conformal_transport(V({"phi", "0"}), P("k"), Expr(1), c), P("k"));
  // field orthogonal to the gradient of N
  EXPECT_EQ(conformal_transport(V({"0", "1"}), Expr(0), P("exp(phi^2/8)"), c),
            Expr(0));
  // flat dilation carried to a conformally related metric
  const Metric flat = diag_metric({"phi", "x"}, {"1", "phi^2"});
  const Expr N2 = P("exp(phi^2/4)");
  const Metric bar = conformal_rescale_metric(flat, N2);
  EXPECT_EQ(bar.g[1][1], P("phi^2*exp(phi^2/4)"));
  const VectorField v = V({"phi", "0"});
  const auto on_bar = classify_collineation(v, bar);
  ASSERT_EQ(on_bar.kind, CollineationKind::CKV);
  const Expr psi = conformal_transport(v, on_bar.psi, sqrt(N2), flat.chart);
  EXPECT_EQ(zero_normal_form(psi - classify_collineation(v, flat).psi), Expr(0));
  EXPECT_EQ(conformal_rescale_metric(flat, Expr(1)).g, flat.g);
}
