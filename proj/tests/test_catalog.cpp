#include <gtest/gtest.h>

#include "symred/pipeline.hpp"

using namespace symred;

namespace {

class CatalogCase : public ::testing::TestWithParam<std::string> {};

int count_kind(const std::vector<FoundVector>& vs, CollineationKind k) {
  int n = 0;
  for (const auto& v : vs) n += v.kind == k;
  return n;
}

}  // namespace

TEST_P(CatalogCase, EveryExpectationIsRederived) {
  const CaseReport rep = run_case(get_case(GetParam()));
  for (const auto& c : rep.checks) EXPECT_TRUE(c.ok) << c.name << "\n  " << c.detail;
  EXPECT_LT(rep.max_residual, 1e-9);
}

TEST_P(CatalogCase, AnsatzFindsTheDeclaredCollineations) {
  const CaseStudy c = get_case(GetParam());
  const auto found = search_collineations(c.metric, c.collineation_degree);
  int declared_kv = 0, declared_hv = 0;
  for (const auto& d : c.vectors) {
    declared_kv += d.kind == CollineationKind::KV;
    declared_hv += d.kind == CollineationKind::HV;
  }
  EXPECT_GE(count_kind(found, CollineationKind::KV), declared_kv);
  EXPECT_GE(count_kind(found, CollineationKind::HV), declared_hv);
  for (const auto& f : found) {
    SampleConfig cfg;
    cfg.box = c.metric.chart.box;
    const auto cls = classify_collineation(f.v, c.metric, cfg);
    EXPECT_EQ(cls.kind, f.kind);
  }
}

INSTANTIATE_TEST_SUITE_P(All, CatalogCase, ::testing::ValuesIn(case_names()),
                         [](const auto& info) { return info.param; });

TEST(Catalog, UnknownCase) { EXPECT_THROW(get_case("petrov_X"), std::invalid_argument); }

TEST(Catalog, PetrovDMetricAndHomothety) {
  const CaseStudy c = get_case("petrov_D");
  EXPECT_EQ(c.metric.g[0][0], Expr(-1));
  EXPECT_EQ(c.metric.g[1][1], parse_expr("x^(-2/3)"));
  EXPECT_EQ(c.metric.g[2][2], parse_expr("-x^(4/3)"));
  int kv = 0;
  for (const auto& d : c.vectors) {
    kv += d.kind == CollineationKind::KV;
    if (d.kind == CollineationKind::HV) EXPECT_EQ(d.psi, Expr(1));
  }
  EXPECT_EQ(kv, 4);
}

TEST(Catalog, ConstantCurvatureBlockForOtherCurvatures) {
  for (const Rational K : {Rational(-1), Rational(1, 2), Rational(3)}) {
    const CaseReport rep = run_case(get_case("decomposable_constcurv_1p2", K));
    for (const auto& c : rep.checks) EXPECT_TRUE(c.ok) << K.str() << ": " << c.name << "\n  " << c.detail;
  }
}

TEST(Catalog, ConstantCurvatureAnsatzHasFourKillingVectors) {
  const CaseStudy c = get_case("decomposable_constcurv_1p2");
  const auto found = search_collineations(c.metric, 2);
  EXPECT_EQ(count_kind(found, CollineationKind::KV), 4);
  EXPECT_EQ(count_kind(found, CollineationKind::HV), 0);
}

TEST(Catalog, DiscrepanciesAreRecordedNotSilenced) {
  for (const auto& name : case_names()) {
    for (const auto& d : get_case(name).discrepancies) {
      EXPECT_FALSE(d.item.empty()) << name;
      EXPECT_FALSE(d.paper.empty()) << name;
      EXPECT_FALSE(d.engine.empty()) << name;
      EXPECT_NE(d.paper, d.engine) << name;
    }
  }
  EXPECT_FALSE(get_case("petrov_N").discrepancies.empty());
  EXPECT_FALSE(get_case("gradient_hv_flat_frw").discrepancies.empty());
}

// The three summary claims, checked across every instantiation that ships.
TEST(Catalog, SummaryClaimsHoldOnEveryInstantiation) {
  const PointGenerator expected_t2 = [] {
    const CaseStudy c = get_case("decomposable_flat_1p2");
    for (const auto& t : c.reductions)
      if (!t.type2.empty()) return t.type2.front();
    return PointGenerator{};
  }();
  for (const auto& name : case_names()) {
    const CaseReport rep = run_case(get_case(name));
    for (const auto& run : rep.reductions) {
      const auto& t2 = run.report.type2;
      if (name.starts_with("petrov")) {
        EXPECT_TRUE(t2.empty()) << name;
        EXPECT_FALSE(run.report.caveats.empty()) << name << ": basis caveat";
      } else if (name.starts_with("decomposable") && run.target.by == "X2") {
        ASSERT_EQ(t2.size(), 1u) << name;
        EXPECT_TRUE(same_lines_mod_scaling(t2, {expected_t2})) << print_generator(t2[0]);
      } else if (name.starts_with("decomposable")) {
        EXPECT_TRUE(t2.empty()) << name << " by " << run.target.by;
      } else {
        // Gradient HV: every Type II generator comes from a proper CKV of the
        // Laplace-form metric.
        const Metric& lm = run.target.search.metric;
        SampleConfig cfg;
        cfg.box = lm.chart.box;
        for (const auto& g : t2) {
          bool from_ckv = false;
          for (const auto& d : run.target.search.vectors)
            if (d.name == g.name)
              from_ckv = classify_collineation(d.v, lm, cfg).kind == CollineationKind::CKV;
          EXPECT_TRUE(from_ckv) << g.name;
        }
      }
    }
  }
}
