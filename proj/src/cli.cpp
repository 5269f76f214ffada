#include "symred/cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "symred/metricfile.hpp"
#include "symred/report.hpp"

namespace symred {

namespace {

struct Options {
  std::string file;
  std::string case_name;
  std::string by;
  bool json = false;
  bool md = false;
  int degree = -1;
  std::uint64_t seed = SampleConfig{}.seed;
  double tol = SampleConfig{}.tol;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CaseStudy load(const Options& o) {
  if (o.file.empty() == o.case_name.empty())
    throw UsageError("give either a metric file or --case");
  return o.case_name.empty() ? load_metric_file(o.file) : get_case(o.case_name);
}

// Makes sure a reduction target for `by` exists, adding an ansatz one if not.
void ensure_target(CaseStudy& c, const Options& o) {
  if (o.by.empty()) return;
  const auto alg = heat_algebra(c);
  if (!alg.find(o.by) || alg.at(o.by).marker) {
    std::string names;
    for (const auto& g : alg.regular()) names += " " + g.name;
    throw UsageError("no heat generator named " + o.by + "; available:" + names);
  }
  for (auto& t : c.reductions)
    if (t.by == o.by) {
      if (o.degree >= 0 && t.search.kind == SearchKind::Ansatz) t.search.degree = o.degree;
      return;
    }
  ReductionTarget t;
  t.by = o.by;
  t.checked = false;
  t.search.degree = o.degree >= 0 ? o.degree : 2;
  c.reductions.push_back(std::move(t));
}

std::string mark(bool ok) { return ok ? "ok" : "FAIL"; }

void print_checks(std::ostream& out, const json& doc) {
  int passed = 0;
  for (const auto& c : doc["checks"]) {
    if (c["ok"].get<bool>()) {
      ++passed;
      continue;
    }
    out << "  FAIL " << c["name"].get<std::string>() << "\n       "
        << c["detail"].get<std::string>() << "\n";
  }
  out << "checks: " << passed << "/" << doc["checks"].size() << " passed\n";
}

void print_generators(std::ostream& out, const json& gens, const std::string& indent) {
  if (gens.empty()) out << indent << "(none)\n";
  for (const auto& g : gens)
    out << indent << g["name"].get<std::string>() << " = " << g["generator"].get<std::string>()
        << "\n";
}

void print_text(std::ostream& out, const std::string& cmd, const json& doc) {
  out << doc["case"].get<std::string>();
  if (!doc["title"].get<std::string>().empty()) out << ": " << doc["title"].get<std::string>();
  out << "\n";
  if (cmd == "validate" || cmd == "collineations") {
    for (const auto& v : doc["collineations"]) {
      const auto& e = v["engine"];
      out << "  " << v["name"].get<std::string>() << ": " << e["class"].get<std::string>()
          << " psi = " << e["psi"].get<std::string>() << ", gradient "
          << e["gradient"].get<std::string>() << "  [" << mark(v["ok"].get<bool>()) << "]\n";
    }
  }
  if (!doc["collineation_search"].is_null()) {
    const auto& s = doc["collineation_search"];
    int kv = 0, hv = 0;
    for (const auto& v : s["vectors"]) (v["class"] == "KV" ? kv : hv)++;
    out << "ansatz (degree " << s["degree"].get<int>() << "): " << kv << " KV, " << hv << " HV\n";
    for (const auto& v : s["vectors"]) {
      std::string comps;
      for (const auto& x : v["components"]) comps += (comps.empty() ? "" : ", ") + x.get<std::string>();
      out << "  " << v["class"].get<std::string>() << " psi = " << v["psi"].get<std::string>()
          << ": (" << comps << ")\n";
    }
  }
  if (cmd == "heat-symmetries") {
    out << "heat symmetries:\n";
    print_generators(out, doc["heat_symmetries"], "  ");
  }
  if (cmd == "commutators") {
    out << "nonzero commutators:\n";
    for (const auto& b : doc["commutators"])
      out << "  [" << b["x"].get<std::string>() << ", " << b["y"].get<std::string>()
          << "] = " << b["result"].get<std::string>() << "\n";
  }
  if (doc.contains("laplace_symmetries")) {
    out << "Laplace symmetries:\n";
    print_generators(out, doc["laplace_symmetries"], "  ");
  }
  for (const auto& r : doc["reductions"]) {
    out << "reduction by " << r["by"].get<std::string>() << "\n";
    out << "  invariants: " << r["invariants"].get<std::string>() << "\n";
    out << "  reduced: " << r["reduced_pde"].get<std::string>() << "\n";
    if (cmd == "reduce") continue;
    out << "  inherited:";
    for (const auto& i : r["inherited"]) out << " " << i["source"].get<std::string>();
    out << "\n  Type I hidden:";
    for (const auto& n : r["type1_hidden"]) out << " " << n.get<std::string>();
    out << "\n  Type II hidden:\n";
    print_generators(out, r["type2_hidden"], "    ");
    out << "  basis: " << r["basis"].get<std::string>() << "\n";
    for (const auto& c : r["caveats"]) out << "  caveat: " << c.get<std::string>() << "\n";
  }
  if (!doc["discrepancies"].empty() && cmd != "reduce")
    out << "recorded discrepancies: " << doc["discrepancies"].size() << "\n";
  print_checks(out, doc);
}

json laplace_json(const CaseStudy& c, int degree, const SampleConfig& cfg) {
  const std::vector<std::vector<Expr>> basis(c.metric.dim(),
                                             monomial_basis(c.metric.chart.coords, degree));
  std::vector<ConformalEntry> ckvs;
  int k = 0;
  for (const auto& f : ansatz_solve_collineation(c.metric, CollineationKind::CKV, basis))
    ckvs.push_back({"C" + std::to_string(++k), f.v, f.psi});
  SymmetryAlgebra alg = laplace_symmetries_from_ckv(c.metric, ckvs);
  json gens = json::array();
  const QuasiLinearPDE p = laplace_pde(c.metric);
  SampleConfig scfg = cfg;
  for (const auto& [name, b] : c.metric.chart.box) scfg.box[name] = b;
  bool sound = true;
  for (const auto& g : alg.gens) {
    gens.push_back(generator_json(g));
    if (!g.marker) sound = sound && is_symmetry(p, g, scfg).verdict == Tri::Yes;
  }
  return {gens, sound};
}

int run(const std::string& cmd, const Options& o, std::ostream& out) {
  if (cmd == "paper-suite") {
    if (!o.file.empty() || !o.case_name.empty() || !o.by.empty())
      throw UsageError("paper-suite takes no input");
    SampleConfig cfg;
    cfg.seed = o.seed;
    cfg.tol = o.tol;
    json all = json::array();
    bool ok = true;
    for (const auto& name : case_names()) {
      const CaseReport rep = run_case(get_case(name), cfg);
      ok = ok && rep.ok();
      all.push_back(report_json(rep));
    }
    if (o.json) {
      out << all.dump(2) << "\n";
    } else if (o.md) {
      for (const auto& d : all) out << render_markdown(d) << "\n";
    } else {
      for (const auto& d : all) {
        int passed = 0;
        for (const auto& c : d["checks"]) passed += c["ok"].get<bool>();
        out << (d["ok"].get<bool>() ? "PASS " : "FAIL ") << d["case"].get<std::string>() << "  "
            << passed << "/" << d["checks"].size() << " checks, "
            << d["discrepancies"].size() << " recorded discrepancies\n";
        for (const auto& c : d["checks"])
          if (!c["ok"].get<bool>())
            out << "  FAIL " << c["name"].get<std::string>() << "\n       "
                << c["detail"].get<std::string>() << "\n";
      }
    }
    return ok ? 0 : 2;
  }

  CaseStudy c = load(o);
  SampleConfig cfg;
  cfg.seed = o.seed;
  cfg.tol = o.tol;
  RunOptions ro;
  ro.reduce_by = o.by;
  if (cmd == "validate") {
    ro.heat = ro.reductions = false;
  } else if (cmd == "collineations") {
    ro.heat = ro.reductions = false;
    ro.ansatz_degree = o.degree >= 0 ? o.degree : -1;
    if (ro.ansatz_degree == 0) ro.ansatz_degree = -1;
  } else if (cmd == "heat-symmetries" || cmd == "commutators") {
    ro.vectors = ro.reductions = false;
  } else if (cmd == "reduce" || cmd == "classify") {
    if (cmd == "reduce" && o.by.empty()) throw UsageError("reduce needs --by");
    ensure_target(c, o);
    ro.vectors = ro.heat = false;
  } else if (cmd == "laplace-symmetries") {
    ro.vectors = ro.heat = ro.reductions = false;
  }
  if (o.degree >= 0 && cmd != "collineations" && cmd != "laplace-symmetries")
    for (auto& t : c.reductions)
      if (t.search.kind == SearchKind::Ansatz) t.search.degree = o.degree;

  const CaseReport rep = run_case(c, cfg, ro);
  json doc = report_json(rep);
  bool ok = rep.ok();
  if (cmd == "laplace-symmetries") {
    const int degree = o.degree >= 0 ? o.degree : c.collineation_degree;
    const json l = laplace_json(c, degree, cfg);
    doc["laplace_symmetries"] = l[0];
    doc["checks"].push_back({{"name", "Laplace generators are symmetries"},
                             {"ok", l[1].get<bool>()},
                             {"detail", "CKV ansatz degree " + std::to_string(degree)}});
    ok = ok && l[1].get<bool>();
    doc["ok"] = ok;
  }
  if (o.json)
    out << doc.dump(2) << "\n";
  else if (o.md)
    out << render_markdown(doc);
  else
    print_text(out, cmd, doc);
  return ok ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry reduction of heat equations on curved spaces", "symred"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "Parse a metric and verify the declared vectors"},
      {"collineations", "Classify declared vectors and run the KV/HV ansatz"},
      {"heat-symmetries", "Heat equation symmetries from the collineations"},
      {"laplace-symmetries", "Laplace equation symmetries from the CKV ansatz"},
      {"reduce", "Reduce the heat equation by a generator (--by)"},
      {"classify", "Reduce and classify inherited, lost and Type II generators"},
      {"commutators", "Commutator table of the heat symmetry algebra"},
      {"paper-suite", "Run every built-in case against its expectations"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    if (name != "paper-suite") {
      s->add_option("file", o.file, "Metric definition file");
      s->add_option("--case", o.case_name, "Built-in case name");
      s->add_option("--by", o.by, "Heat generator to reduce by");
    }
    auto* j = s->add_flag("--json", o.json, "Print the JSON report");
    s->add_flag("--md", o.md, "Print the Markdown report")->excludes(j);
    s->add_option("--ansatz-degree", o.degree, "Polynomial degree of ansatz searches")
        ->check(CLI::Range(0, 6));
    s->add_option("--seed", o.seed, "Seed for numeric checks");
    s->add_option("--tol", o.tol, "Zero tolerance for numeric checks")
        ->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    if (o.json) out << error_json("usage", e.what()).dump(2) << "\n";
    return 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  auto fail = [&](const std::string& kind, const std::string& msg, int line, int code) {
    err << "symred: " << msg << "\n";
    if (o.json) out << error_json(kind, msg, line).dump(2) << "\n";
    if (o.md) out << render_markdown(error_json(kind, msg, line));
    return code;
  };
  try {
    return run(cmd, o, out);
  } catch (const MetricFileError& e) {
    return fail("parse", e.what(), e.line(), 1);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), 0, 1);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), 0, 1);
  } catch (const std::invalid_argument& e) {
    return fail("usage", e.what(), 0, 1);
  } catch (const std::exception& e) {
    return fail("verification", e.what(), 0, 2);
  }
}

}  // namespace symred
