#include <gtest/gtest.h>

#include "symred/report.hpp"
#include "symred/zero.hpp"

using namespace symred;

namespace {

std::vector<Metric> catalog_metrics() {
  std::vector<Metric> out;
  for (const auto& name : case_names()) {
    const CaseStudy c = get_case(name);
    out.push_back(c.metric);
    for (const auto& t : c.reductions)
      if (t.search.kind != SearchKind::Ansatz) out.push_back(t.search.metric);
  }
  return out;
}

void collect(const PointGenerator& g, std::vector<Expr>& out) {
  if (g.marker) return;
  out.insert(out.end(), g.xi.begin(), g.xi.end());
  out.push_back(g.a);
}

}  // namespace

TEST(Properties, HeatFactoryOutputIsExactlySound) {
  for (const auto& name : case_names()) {
    const CaseStudy c = get_case(name);
    const QuasiLinearPDE p = heat_pde(c.metric);
    SampleConfig cfg;
    cfg.box = p.box;
    for (const auto& [k, v] : c.metric.chart.box) cfg.box[k] = v;
    for (const auto& g : heat_algebra(c).regular()) {
      const auto s = is_symmetry(p, g, cfg);
      EXPECT_EQ(s.verdict, Tri::Yes) << name << " " << g.name;
      EXPECT_TRUE(s.exact) << name << " " << g.name;
      EXPECT_LT(s.max_residual, 1e-9);
    }
  }
}

TEST(Properties, CommutatorAntisymmetryAndJacobi) {
  for (const auto& name : case_names()) {
    const auto g = heat_algebra(get_case(name)).regular();
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        EXPECT_TRUE((commutator(g[i], g[j]) + commutator(g[j], g[i])).is_zero())
            << name << " " << g[i].name << " " << g[j].name;
        for (std::size_t k = j + 1; k < n; ++k) {
          const auto jac = commutator(g[i], commutator(g[j], g[k])) +
                           commutator(g[j], commutator(g[k], g[i])) +
                           commutator(g[k], commutator(g[i], g[j]));
          EXPECT_TRUE(same_generator(jac, Expr(0) * jac))
              << name << " " << g[i].name << " " << g[j].name << " " << g[k].name;
        }
      }
  }
}

TEST(Properties, HeatAlgebrasClose) {
  for (const auto& name : case_names()) {
    const auto alg = heat_algebra(get_case(name));
    EXPECT_TRUE(alg.exceptions.empty()) << name;
  }
}

TEST(Properties, MetricCompatibility) {
  for (const Metric& m : catalog_metrics()) {
    const auto G = christoffel(m);
    const std::size_t n = m.dim();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          Expr r = differentiate(m.g[i][j], m.chart.coords[k]);
          for (std::size_t l = 0; l < n; ++l)
            r -= G[l][k][i] * m.g[l][j] + G[l][k][j] * m.g[i][l];
          EXPECT_EQ(zero_normal_form(r), Expr(0)) << m.chart.coords[k];
        }
  }
}

// Every expression the catalog defines or the engine derives from it.
TEST(Properties, ParsePrintRoundTripOnTheCatalogCorpus) {
  std::vector<Expr> corpus;
  for (const auto& name : case_names()) {
    const CaseStudy c = get_case(name);
    for (const auto& row : c.metric.g) corpus.insert(corpus.end(), row.begin(), row.end());
    for (const auto& d : c.vectors) {
      corpus.insert(corpus.end(), d.v.xi.begin(), d.v.xi.end());
      corpus.push_back(d.psi);
    }
    const auto alg = heat_algebra(c);
    for (const auto& g : alg.gens) collect(g, corpus);
    for (const auto& t : c.reductions) {
      for (const auto& row : t.expected.A) corpus.insert(corpus.end(), row.begin(), row.end());
      corpus.insert(corpus.end(), t.expected.B.begin(), t.expected.B.end());
      corpus.insert(corpus.end(), t.search.kernels.begin(), t.search.kernels.end());
      for (const auto& g : t.type2) collect(g, corpus);
      const ReducedPDE r = reduce_pde(heat_pde(c.metric), alg.at(t.by),
                                      invariants_for(alg.at(t.by), t.names));
      corpus.push_back(r.chart.mu);
      for (const auto& row : r.pde.A) corpus.insert(corpus.end(), row.begin(), row.end());
      corpus.insert(corpus.end(), r.pde.B.begin(), r.pde.B.end());
    }
  }
  EXPECT_GT(corpus.size(), 500u);
  for (const auto& e : corpus) {
    const std::string s = print_expr(e);
    EXPECT_EQ(parse_expr(s), e) << s;
    EXPECT_EQ(print_expr(parse_expr(s)), s);
  }
}

TEST(Properties, ReportsAreSeedDeterministic) {
  SampleConfig a;
  a.seed = 11;
  a.tol = 1e-10;
  for (const char* name : {"petrov_III", "decomposable_flat_1p2"}) {
    const std::string r1 = report_json(run_case(get_case(name), a)).dump();
    const std::string r2 = report_json(run_case(get_case(name), a)).dump();
    EXPECT_EQ(r1, r2);
    SampleConfig b = a;
    b.seed = 12;
    json j1 = json::parse(r1), j2 = report_json(run_case(get_case(name), b));
    j1.erase("numeric");
    j2.erase("numeric");
    EXPECT_EQ(j1, j2) << "symbolic content must not depend on the seed";
  }
}

TEST(Properties, ClassificationIgnoresTheScaleOfTheReducingGenerator) {
  for (const char* name : {"decomposable_flat_1p2", "petrov_III"}) {
    const CaseStudy c = get_case(name);
    const auto alg = heat_algebra(c);
    const QuasiLinearPDE p = heat_pde(c.metric);
    for (const auto& t : c.reductions) {
      std::vector<std::vector<std::string>> lines;
      std::vector<std::vector<PointGenerator>> type2;
      for (const Expr k : {Expr(1), Expr(-3), Expr(Rational(1, 2))}) {
        PointGenerator z = k * alg.at(t.by);
        z.name = t.by;
        const ReducedPDE r = reduce_pde(p, z, invariants_for(z, t.names));
        const auto rep = classify_reduction(p, alg, z, r, run_search(t.search, r));
        std::vector<std::string> inh;
        for (const auto& i : rep.inherited) inh.push_back(i.source);
        lines.push_back(inh);
        type2.push_back(rep.type2);
      }
      EXPECT_EQ(lines[0], lines[1]) << name << " " << t.by;
      EXPECT_EQ(lines[0], lines[2]) << name << " " << t.by;
      EXPECT_TRUE(same_lines_mod_scaling(type2[0], type2[1]));
      EXPECT_TRUE(same_lines_mod_scaling(type2[0], type2[2]));
    }
  }
}

TEST(Properties, MarkdownCarriesTheJsonNumbers) {
  const json doc = report_json(run_case(get_case("petrov_D")));
  const std::string md = render_markdown(doc);
  EXPECT_NE(md.find(doc["numeric"]["max_residual"].dump()), std::string::npos);
  EXPECT_NE(md.find(doc["numeric"]["tol"].dump()), std::string::npos);
  EXPECT_NE(md.find(doc["numeric"]["seed"].dump()), std::string::npos);
  for (const auto& [k, v] : doc["metric"]["box"].items())
    EXPECT_NE(md.find("[" + v[0].dump() + ", " + v[1].dump() + "]"), std::string::npos);
}
