#include <gtest/gtest.h>

#include "symred/classify.hpp"

using namespace symred;

namespace {

Expr P(const char* s) { return parse_expr(s); }

Metric flat(std::vector<std::string> coords) {
  Metric m;
  const std::size_t n = coords.size();
  m.chart.coords = std::move(coords);
  m.g.assign(n, std::vector<Expr>(n, Expr(0)));
  for (std::size_t i = 0; i < n; ++i) m.g[i][i] = Expr(1);
  return m;
}

HomotheticEntry entry(const std::string& name, const Metric& m,
                      std::vector<const char*> xi, const std::string& grad) {
  HomotheticEntry e;
  e.name = name;
  e.grad_name = grad;
  for (const char* s : xi) e.v.xi.push_back(P(s));
  e.cls = classify_collineation(e.v, m);
  if (e.cls.gradient == Tri::Yes) e.S = gradient_potential(e.v, m).S;
  return e;
}

struct Decomposable {
  Metric m = flat({"x", "y", "z"});
  QuasiLinearPDE p = heat_pde(m);
  SymmetryAlgebra alg =
      heat_symmetries_from_homothetic(m, {entry("X1", m, {"1", "0", "0"}, "X2")});
};

Inheritance status(const std::vector<InheritanceEntry>& es, const std::string& n) {
  for (const auto& e : es)
    if (e.name == n) return e.status;
  throw std::out_of_range(n);
}

}  // namespace

TEST(Classify, InheritanceUnderTranslation) {
  Decomposable d;
  const auto es = inheritance_map(d.alg, d.alg.at("X1"));
  EXPECT_EQ(status(es, "X_t"), Inheritance::Inherits);
  EXPECT_EQ(status(es, "X1"), Inheritance::Reducing);
  EXPECT_EQ(status(es, "X2"), Inheritance::Ambiguous);
  EXPECT_EQ(status(es, "X_u"), Inheritance::Background);
  EXPECT_EQ(status(es, "X_b"), Inheritance::Background);
}

TEST(Classify, InheritanceUnderGaussianGenerator) {
  Decomposable d;
  const auto es = inheritance_map(d.alg, d.alg.at("X2"));
  EXPECT_EQ(status(es, "X_t"), Inheritance::NotInherited);
  EXPECT_EQ(status(es, "X1"), Inheritance::Ambiguous);
}

TEST(Classify, InheritanceIsBlindToRescalingAndShifts) {
  Decomposable d;
  const auto base = inheritance_map(d.alg, d.alg.at("X2"));
  SymmetryAlgebra shifted = d.alg;
  auto& xt = shifted.gens[*shifted.find("X_t")];
  xt = xt + Expr(3) * d.alg.at("X2");
  xt.name = "X_t";
  const auto es = inheritance_map(shifted, Expr(-2) * d.alg.at("X2"));
  for (std::size_t k = 0; k < es.size(); ++k) EXPECT_EQ(es[k].status, base[k].status);
}

TEST(Classify, PushForwardOfTheTimeTranslation) {
  Decomposable d;
  const auto& z = d.alg.at("X1");
  const auto ch = invariants_for(z);
  const auto img = push_forward(d.alg.at("X_t"), ch);
  ASSERT_TRUE(img.has_value());
  EXPECT_EQ(print_generator(*img), "d_t");
  EXPECT_FALSE(push_forward(d.alg.at("X2"), ch).has_value());
}

TEST(Classify, ReductionByTranslationHasNoTypeTwo) {
  Decomposable d;
  const auto& z = d.alg.at("X1");
  const auto red = reduce_pde(d.p, z, invariants_for(z));
  const auto rsyms = heat_symmetries_from_homothetic(flat({"y", "z"}), {});
  const auto rep = classify_reduction(d.p, d.alg, z, red, rsyms);
  EXPECT_TRUE(rep.type2.empty());
  ASSERT_EQ(rep.inherited.size(), 1u);
  EXPECT_EQ(rep.inherited[0].source, "X_t");
  EXPECT_TRUE(rep.inherited[0].matched);
  EXPECT_EQ(rep.lost, std::vector<std::string>{"X2"});
}

TEST(Classify, ReductionByGaussianGeneratorRevealsTypeTwo) {
  Decomposable d;
  const auto& z = d.alg.at("X2");
  const auto red = reduce_pde(d.p, z, invariants_for(z, {"tau", "y", "z"}));
  const Metric h = flat({"y", "z"});
  const auto rsyms = flux_symmetries(h, P("w/(2*tau)"), {}, "tau", "w");
  const auto rep = classify_reduction(d.p, d.alg, z, red, rsyms);
  ASSERT_EQ(rep.type2.size(), 1u);
  EXPECT_EQ(print_generator(rep.type2[0]), "d_tau - 1/(2*tau)*w*d_w");
  EXPECT_TRUE(rep.inherited.empty());
  EXPECT_EQ(rep.lost, (std::vector<std::string>{"X_t", "X1"}));
}

TEST(Classify, InheritedImagesAreSymmetries) {
  // the block's own collineations survive the Gaussian reduction
  const Metric m = flat({"x", "y", "z"});
  const auto alg = heat_symmetries_from_homothetic(
      m, {entry("X1", m, {"1", "0", "0"}, "X2"), entry("Y1", m, {"0", "1", "0"}, "Y2"),
          entry("R", m, {"0", "-z", "y"}, ""), entry("D", m, {"x", "y", "z"}, "P")});
  const auto p = heat_pde(m);
  const auto& z = alg.at("X2");
  const auto red = reduce_pde(p, z, invariants_for(z, {"tau", "y", "z"}));
  const Metric h = flat({"y", "z"});
  const auto rsyms = flux_symmetries(
      h, P("w/(2*tau)"),
      {entry("Y1", h, {"1", "0"}, "Y2"), entry("R", h, {"-z", "y"}, ""),
       entry("D", h, {"y", "z"}, "P")},
      "tau", "w");
  const auto rep = classify_reduction(p, alg, z, red, rsyms);
  for (const auto& ii : rep.inherited) {
    EXPECT_EQ(is_symmetry(red.pde, ii.image).verdict, Tri::Yes) << ii.source;
    EXPECT_TRUE(ii.matched) << ii.source;
  }
  std::vector<std::string> names;
  for (const auto& ii : rep.inherited) names.push_back(ii.source);
  EXPECT_EQ(names, (std::vector<std::string>{"Y1", "Y2", "R", "D", "P"}));
  ASSERT_EQ(rep.type2.size(), 1u);
  EXPECT_EQ(print_generator(rep.type2[0]), "d_tau - 1/(2*tau)*w*d_w");
}
