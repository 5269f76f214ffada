#include "symred/report.hpp"

#include <sstream>

namespace symred {

namespace {

json vector_json(const std::vector<Expr>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(print_expr(x));
  return a;
}

std::string combination(const SymmetryAlgebra& alg, const Bracket& b) {
  std::string s;
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) {
    if (b.coeffs[k].is_zero()) continue;
    std::string t = print_expr(Expr(b.coeffs[k]) * sym(alg.gens[k].name));
    if (!s.empty()) t = (t[0] == '-') ? " - " + t.substr(1) : " + " + t;
    s += t;
  }
  return s;
}

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

std::string cell(const json& v) {
  std::string s = scalar(v);
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string fields_text(const json& g) {
  std::string s;
  for (const auto& f : g["fields"])
    s += (s.empty() ? "" : "; ") + cell(f["field"]) + ": " + cell(f["coeff"]);
  return s;
}

void list(std::ostringstream& os, const std::string& title, const json& items) {
  os << "- " << title << ":";
  if (items.empty()) os << " none";
  os << "\n";
  for (const auto& x : items) os << "  - `" << scalar(x) << "`\n";
}

void generator_list(std::ostringstream& os, const json& gens) {
  if (gens.empty()) os << "  - none\n";
  for (const auto& g : gens)
    os << "  - " << scalar(g["name"]) << " = `" << scalar(g["generator"]) << "` ("
       << fields_text(g) << "), marker " << scalar(g["marker"]) << "\n";
}

}  // namespace

json generator_json(const PointGenerator& g) {
  json fields = json::array();
  auto add = [&](const std::string& field, const Expr& c) {
    if (!c.is_zero()) fields.push_back({{"field", field}, {"coeff", print_expr(c)}});
  };
  if (!g.marker) {
    for (std::size_t i = 0; i < g.coords.size(); ++i) add("d_" + g.coords[i], g.xi[i]);
    add(g.dep + "*d_" + g.dep, g.a);
    add("d_" + g.dep, g.b);
  }
  return {{"name", g.name},
          {"generator", print_generator(g)},
          {"marker", g.marker},
          {"fields", fields}};
}

json commutators_json(const SymmetryAlgebra& alg) {
  json out = json::array();
  for (const auto& b : alg.table) {
    const auto& x = alg.gens[b.i];
    const auto& y = alg.gens[b.j];
    if (x.marker || y.marker) continue;
    const PointGenerator c = commutator(x, y);
    if (c.is_zero()) continue;
    out.push_back({{"x", x.name},
                   {"y", y.name},
                   {"result", b.closes ? combination(alg, b) : print_generator(c)},
                   {"closes", b.closes}});
  }
  return out;
}

json report_json(const CaseReport& rep) {
  const CaseStudy& c = rep.study;
  json doc;
  doc["case"] = c.name;
  doc["title"] = c.title;
  doc["ok"] = rep.ok();

  json box = json::object();
  for (const auto& [k, v] : c.metric.chart.box) box[k] = {v.lo, v.hi};
  json rows = json::array();
  for (const auto& r : c.metric.g) rows.push_back(vector_json(r));
  doc["metric"] = {{"coords", c.metric.chart.coords}, {"box", box}, {"rows", rows}};

  json cols = json::array();
  for (const auto& v : rep.vectors) {
    json declared = nullptr;
    if (v.declared.checked)
      declared = {{"class", kind_name(v.declared.kind)},
                  {"psi", print_expr(v.declared.psi)},
                  {"gradient", tri_name(v.declared.gradient)}};
    cols.push_back({{"name", v.declared.name},
                    {"components", vector_json(v.declared.v.xi)},
                    {"declared", declared},
                    {"engine",
                     {{"class", kind_name(v.engine.kind)},
                      {"psi", print_expr(v.engine.psi)},
                      {"gradient", tri_name(v.engine.gradient)}}},
                    {"ok", v.ok}});
  }
  doc["collineations"] = cols;

  if (rep.found) {
    json found = json::array();
    for (const auto& f : *rep.found)
      found.push_back({{"class", kind_name(f.kind)},
                       {"psi", print_expr(f.psi)},
                       {"components", vector_json(f.v.xi)}});
    doc["collineation_search"] = {{"degree", rep.found_degree}, {"vectors", found}};
  } else {
    doc["collineation_search"] = nullptr;
  }

  json heat = json::array();
  for (const auto& g : rep.heat.gens) heat.push_back(generator_json(g));
  doc["heat_symmetries"] = heat;
  doc["commutators"] = commutators_json(rep.heat);

  json reds = json::array();
  for (const auto& run : rep.reductions) {
    const ReductionReport& r = run.report;
    json inherited = json::array();
    for (const auto& i : r.inherited)
      inherited.push_back(
          {{"source", i.source}, {"image", generator_json(i.image)}, {"matched", i.matched}});
    json statuses = json::array();
    for (const auto& e : r.inheritance)
      statuses.push_back({{"name", e.name}, {"status", inheritance_name(e.status)}});
    json type2 = json::array();
    for (const auto& g : r.type2) type2.push_back(generator_json(g));
    json found = json::array();
    for (const auto& g : r.reduced_symmetries) found.push_back(generator_json(g));
    reds.push_back({{"by", r.by},
                    {"invariants", r.reduced.chart.describe()},
                    {"reduced_pde", describe(r.reduced.pde)},
                    {"search", search_kind_name(run.target.search.kind)},
                    {"inheritance", statuses},
                    {"inherited", inherited},
                    {"type1_hidden", r.lost},
                    {"type2_hidden", type2},
                    {"reduced_symmetries", found},
                    {"basis", r.basis},
                    {"caveats", r.caveats}});
  }
  doc["reductions"] = reds;

  json checks = json::array();
  for (const auto& ch : rep.checks)
    checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
  doc["checks"] = checks;

  json disc = json::array();
  for (const auto& d : c.discrepancies)
    disc.push_back({{"item", d.item}, {"paper", d.paper}, {"engine", d.engine}});
  doc["discrepancies"] = disc;

  doc["numeric"] = {{"seed", rep.cfg.seed},
                    {"tol", rep.cfg.tol},
                    {"samples", rep.cfg.samples},
                    {"max_residual", rep.max_residual}};
  return doc;
}

json error_json(const std::string& kind, const std::string& message, int line) {
  json e = {{"kind", kind}, {"message", message}};
  if (line > 0) e["line"] = line;
  return {{"error", e}};
}

std::string render_markdown(const json& doc) {
  std::ostringstream os;
  if (doc.contains("error")) {
    const json& e = doc["error"];
    os << "# Error\n\n- kind: " << scalar(e["kind"]) << "\n- message: " << scalar(e["message"])
       << "\n";
    if (e.contains("line")) os << "- line: " << scalar(e["line"]) << "\n";
    return os.str();
  }

  os << "# " << scalar(doc["case"]) << "\n\n";
  if (!doc["title"].get<std::string>().empty()) os << scalar(doc["title"]) << "\n\n";
  os << "ok: " << scalar(doc["ok"]) << "\n\n";

  const json& m = doc["metric"];
  os << "## Metric\n\nCoordinates:";
  for (const auto& c : m["coords"]) os << " `" << scalar(c) << "`";
  os << "\n\n";
  for (const auto& [k, v] : m["box"].items())
    os << "- box " << k << ": [" << scalar(v[0]) << ", " << scalar(v[1]) << "]\n";
  os << "\n```\n";
  for (const auto& r : m["rows"]) {
    std::string line;
    for (const auto& e : r) line += (line.empty() ? "" : " | ") + scalar(e);
    os << "[ " << line << " ]\n";
  }
  os << "```\n\n";

  if (!doc["collineations"].empty()) {
    os << "## Collineations\n\n| name | components | declared | engine | ok |\n"
       << "|---|---|---|---|---|\n";
    for (const auto& v : doc["collineations"]) {
      std::string comps;
      for (const auto& x : v["components"]) comps += (comps.empty() ? "" : ", ") + cell(x);
      auto cls = [](const json& c) {
        if (c.is_null()) return std::string("none");
        return cell(c["class"]) + ", psi = " + cell(c["psi"]) + ", gradient " +
               cell(c["gradient"]);
      };
      os << "| " << cell(v["name"]) << " | (" << comps << ") | " << cls(v["declared"]) << " | "
         << cls(v["engine"]) << " | " << scalar(v["ok"]) << " |\n";
    }
    os << "\n";
  }

  if (!doc["collineation_search"].is_null()) {
    const json& s = doc["collineation_search"];
    os << "## Collineation search\n\n- degree: " << scalar(s["degree"]) << "\n";
    for (const auto& v : s["vectors"]) {
      std::string comps;
      for (const auto& x : v["components"]) comps += (comps.empty() ? "" : ", ") + scalar(x);
      os << "- " << scalar(v["class"]) << " (psi = " << scalar(v["psi"]) << "): (" << comps
         << ")\n";
    }
    os << "\n";
  }

  if (!doc["heat_symmetries"].empty()) {
    os << "## Heat symmetries\n\n";
    generator_list(os, doc["heat_symmetries"]);
    os << "\n";
  }
  if (doc.contains("laplace_symmetries")) {
    os << "## Laplace symmetries\n\n";
    generator_list(os, doc["laplace_symmetries"]);
    os << "\n";
  }
  if (!doc["commutators"].empty()) {
    os << "## Commutators\n\n| x | y | result | closes |\n|---|---|---|---|\n";
    for (const auto& b : doc["commutators"])
      os << "| " << cell(b["x"]) << " | " << cell(b["y"]) << " | " << cell(b["result"]) << " | "
         << scalar(b["closes"]) << " |\n";
    os << "\n";
  }

  for (const auto& r : doc["reductions"]) {
    os << "## Reduction by " << scalar(r["by"]) << "\n\n";
    os << "- invariants: `" << scalar(r["invariants"]) << "`\n";
    os << "- reduced equation: `" << scalar(r["reduced_pde"]) << "`\n";
    os << "- search: " << scalar(r["search"]) << "\n";
    os << "- basis: " << scalar(r["basis"]) << "\n";
    os << "- inheritance:";
    for (const auto& e : r["inheritance"])
      os << " " << scalar(e["name"]) << " (" << scalar(e["status"]) << ")";
    os << "\n- inherited:\n";
    if (r["inherited"].empty()) os << "  - none\n";
    for (const auto& i : r["inherited"]) {
      const json& g = i["image"];
      os << "  - " << scalar(i["source"]) << " -> " << scalar(g["name"]) << " = `"
         << scalar(g["generator"]) << "` (" << fields_text(g) << "), marker "
         << scalar(g["marker"]) << ", matched " << scalar(i["matched"])
         << "\n";
    }
    list(os, "Type I hidden", r["type1_hidden"]);
    os << "- Type II hidden:\n";
    generator_list(os, r["type2_hidden"]);
    os << "- reduced symmetries:\n";
    generator_list(os, r["reduced_symmetries"]);
    list(os, "caveats", r["caveats"]);
    os << "\n";
  }

  if (!doc["checks"].empty()) {
    os << "## Checks\n\n| check | ok | detail |\n|---|---|---|\n";
    for (const auto& c : doc["checks"])
      os << "| " << cell(c["name"]) << " | " << scalar(c["ok"]) << " | " << cell(c["detail"])
         << " |\n";
    os << "\n";
  }
  if (!doc["discrepancies"].empty()) {
    os << "## Discrepancies\n\n";
    for (const auto& d : doc["discrepancies"])
      os << "- " << scalar(d["item"]) << "\n  - paper: " << scalar(d["paper"])
         << "\n  - engine: " << scalar(d["engine"]) << "\n";
    os << "\n";
  }
  const json& n = doc["numeric"];
  os << "## Numerics\n\n- seed: " << scalar(n["seed"]) << "\n- tol: " << scalar(n["tol"])
     << "\n- samples: " << scalar(n["samples"]) << "\n- max_residual: "
     << scalar(n["max_residual"]) << "\n";
  return os.str();
}

}  // namespace symred
