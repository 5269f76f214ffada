#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "symred/metricfile.hpp"
#include "symred/pipeline.hpp"

using namespace symred;

namespace {

const char* kPlane = R"(# polar plane with a rotation
[space]
name = "polar"
coords = ["r", "th"]   # trailing comment

[box]
r = [0.5, 2]

[metric]
rows = [
  ["1", "0"],
  ["0", "r^2"],   # trailing comma allowed
]

[vector.R]
components = ["0", "1"]
class = "KV"

[vector.D]
components = ["r", "0"]
heat = "XD"

[reduce.R]
names = ["t", "r"]
)";

int error_line(const std::string& text) {
  try {
    parse_metric_file(text);
  } catch (const MetricFileError& e) {
    return e.line();
  }
  return -1;
}

std::string with(const std::string& metric_rows) {
  return "[space]\nname = \"m\"\ncoords = [\"x\", \"y\"]\n[metric]\nrows = " + metric_rows +
         "\n";
}

}  // namespace

TEST(MetricFile, ParsesTheSubset) {
  const CaseStudy c = parse_metric_file(kPlane);
  EXPECT_EQ(c.name, "polar");
  ASSERT_EQ(c.metric.chart.coords, (std::vector<std::string>{"r", "th"}));
  EXPECT_EQ(c.metric.chart.box.at("r").lo, 0.5);
  EXPECT_EQ(c.metric.chart.box.at("r").hi, 2.0);
  EXPECT_EQ(c.metric.g[1][1], parse_expr("r^2"));
  ASSERT_EQ(c.vectors.size(), 2u);
  EXPECT_TRUE(c.vectors[0].checked);
  EXPECT_EQ(c.vectors[0].heat_name, "R");
  EXPECT_FALSE(c.vectors[1].checked);
  EXPECT_EQ(c.vectors[1].heat_name, "XD");
  ASSERT_EQ(c.reductions.size(), 1u);
  EXPECT_EQ(c.reductions[0].by, "R");
  EXPECT_FALSE(c.reductions[0].checked);
  EXPECT_EQ(c.reductions[0].search.kind, SearchKind::Ansatz);
}

TEST(MetricFile, DiagonalShorthand) {
  const CaseStudy c = parse_metric_file(
      "[space]\nname = \"d\"\ncoords = [\"x\", \"y\"]\n[metric]\ndiag = [\"1\", \"x^2\"]\n");
  EXPECT_EQ(c.metric.g[0][1], Expr(0));
  EXPECT_EQ(c.metric.g[1][1], parse_expr("x^2"));
}

TEST(MetricFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line(with(R"([["1", "0"], ["0", "z"]])")), 5);            // unknown symbol
  EXPECT_EQ(error_line(with(R"([["1", "x"], ["0", "1"]])")), 5);            // not symmetric
  EXPECT_EQ(error_line(with(R"([["1", "0"], ["0"]])")), 5);                 // short row
  EXPECT_EQ(error_line(with(R"([["1", "0"], ["0", "1"])")), 5);             // unclosed array
  EXPECT_EQ(error_line(with("[[\"1\", \"0\"],\n [\"0\", \"x +\"]]")), 6);   // bad expression
  EXPECT_EQ(error_line(with(R"([["1", "0"], ["0", "0"]])")), 4);            // degenerate
  EXPECT_EQ(error_line("[space]\nname = \"a\nb\"\n"), 2);                   // unterminated
  EXPECT_EQ(error_line("[space]\nname = \"a\"\nname = \"b\"\n"), 3);        // duplicate key
  EXPECT_EQ(error_line("[space]\nnom = \"a\"\n"), 2);                       // unknown key
  EXPECT_EQ(error_line("[spice]\n"), 1);                                    // unknown table
  EXPECT_EQ(error_line(std::string(kPlane) + "[vector.Q]\ncomponents = [\"1\", \"0\"]\n"
                                             "class = \"Killing\"\n"),
            static_cast<int>(std::count(kPlane, kPlane + std::strlen(kPlane), '\n')) + 3);
  EXPECT_EQ(error_line("[space]\nname = \"a\"\ncoords = [\"x\"]\n"), 0);     // no [metric]
}

TEST(MetricFile, EveryCatalogCaseRoundTrips) {
  for (const auto& name : case_names()) {
    const CaseStudy c = get_case(name);
    const std::string text = write_metric_file(c);
    const CaseStudy r = parse_metric_file(text);
    EXPECT_EQ(r.name, c.name);
    EXPECT_EQ(r.title, c.title);
    EXPECT_EQ(r.metric.chart.coords, c.metric.chart.coords);
    EXPECT_EQ(r.metric.g, c.metric.g) << name;
    EXPECT_EQ(r.metric.chart.box.size(), c.metric.chart.box.size());
    ASSERT_EQ(r.vectors.size(), c.vectors.size());
    for (std::size_t i = 0; i < c.vectors.size(); ++i) {
      EXPECT_EQ(r.vectors[i].v.xi, c.vectors[i].v.xi) << name << " " << c.vectors[i].name;
      EXPECT_EQ(r.vectors[i].kind, c.vectors[i].kind);
      EXPECT_EQ(r.vectors[i].psi, c.vectors[i].psi);
      EXPECT_EQ(r.vectors[i].gradient, c.vectors[i].gradient);
      EXPECT_EQ(r.vectors[i].heat_name, c.vectors[i].heat_name);
      EXPECT_EQ(r.vectors[i].grad_name, c.vectors[i].grad_name);
    }
    ASSERT_EQ(r.reductions.size(), c.reductions.size());
    for (std::size_t i = 0; i < c.reductions.size(); ++i) {
      EXPECT_EQ(r.reductions[i].by, c.reductions[i].by);
      EXPECT_EQ(r.reductions[i].names, c.reductions[i].names);
    }
    EXPECT_EQ(write_metric_file(r), text) << name;
  }
}

TEST(MetricFile, ShippedFilesMatchTheCatalog) {
  for (const auto& name : case_names()) {
    std::ifstream in(std::string(SYMRED_CASES_DIR) + "/" + name + ".toml");
    ASSERT_TRUE(in) << name;
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), write_metric_file(get_case(name))) << name;
  }
}

TEST(MetricFile, FileCasesRunWithoutCatalogExpectations) {
  const CaseStudy c = load_metric_file(std::string(SYMRED_CASES_DIR) + "/petrov_D.toml");
  const CaseReport rep = run_case(c);
  EXPECT_TRUE(rep.ok());
  ASSERT_EQ(rep.reductions.size(), 1u);
  EXPECT_TRUE(rep.reductions[0].report.type2.empty());

  const CaseReport plane = run_case(parse_metric_file(kPlane));
  for (const auto& ch : plane.checks) EXPECT_TRUE(ch.ok) << ch.name << ": " << ch.detail;
  EXPECT_EQ(plane.vectors[1].engine.kind, CollineationKind::HV);
}
