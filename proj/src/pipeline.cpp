#include "symred/pipeline.hpp"

#include <algorithm>
#include <set>

#include "symred/zero.hpp"

namespace symred {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return "{" + s + "}";
}

std::string print_combination(const std::vector<std::pair<std::string, Rational>>& r) {
  if (r.empty()) return "0";
  std::string s;
  for (const auto& [name, c] : r) {
    const Expr term = Expr(c) * sym(name);
    std::string t = print_expr(term);
    if (!s.empty()) t = (t[0] == '-') ? " - " + t.substr(1) : " + " + t;
    s += t;
  }
  return s;
}

bool same_expr(const Expr& a, const Expr& b) {
  return zero_normal_form(a - b).is_zero();
}

}  // namespace

bool CaseReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

bool same_lines_mod_scaling(const std::vector<PointGenerator>& a,
                            const std::vector<PointGenerator>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  auto within = [](const std::vector<PointGenerator>& xs, std::vector<PointGenerator> pool) {
    pool.push_back(scaling_generator(xs.front().coords, xs.front().dep));
    for (const auto& x : xs)
      if (x.coords != pool.front().coords || !span_coefficients(x, pool)) return false;
    return true;
  };
  return within(a, b) && within(b, a);
}

std::vector<FoundVector> search_collineations(const Metric& m, int degree) {
  const std::vector<std::vector<Expr>> basis(m.dim(),
                                             monomial_basis(m.chart.coords, degree));
  return ansatz_solve_collineation(m, CollineationKind::HV, basis);
}

CaseReport run_case(const CaseStudy& c, const SampleConfig& cfg0, const RunOptions& opts) {
  CaseReport rep;
  rep.study = c;
  rep.cfg = cfg0;
  SampleConfig cfg = cfg0;
  for (const auto& [k, v] : c.metric.chart.box) cfg.box[k] = v;
  auto check = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  if (opts.vectors)
    for (const auto& d : c.vectors) {
      VectorReport vr{d, classify_collineation(d.v, c.metric, cfg), false};
      vr.ok = vr.engine.kind == d.kind && same_expr(vr.engine.psi, d.psi) &&
              vr.engine.gradient == d.gradient;
      if (!d.checked) {
        vr.ok = vr.engine.kind != CollineationKind::NotConformal;
        rep.vectors.push_back(std::move(vr));
        continue;
      }
      check("vector " + d.name + " is " + kind_name(d.kind), vr.ok,
            std::string("engine: ") + kind_name(vr.engine.kind) +
                ", psi = " + print_expr(vr.engine.psi) +
                ", gradient " + tri_name(vr.engine.gradient));
      rep.vectors.push_back(std::move(vr));
    }

  if (opts.ansatz_degree != 0) {
    rep.found_degree = opts.ansatz_degree < 0 ? c.collineation_degree : opts.ansatz_degree;
    rep.found = search_collineations(c.metric, rep.found_degree);
  }

  if (!opts.heat && !opts.reductions) return rep;
  rep.heat = heat_algebra(c);
  const QuasiLinearPDE pde = heat_pde(c.metric);
  SampleConfig hcfg = cfg;
  for (const auto& [k, v] : pde.box) hcfg.box[k] = v;

  if (opts.heat) {
    std::vector<std::string> extra;
    for (const auto& g : rep.heat.gens)
      if (!g.marker && g.name != "X_t" && g.name != "X_u") extra.push_back(g.name);
    auto want = c.extra_heat;
    std::sort(want.begin(), want.end());
    auto got = extra;
    std::sort(got.begin(), got.end());
    if (c.heat_checked) check("extra heat symmetries", got == want, "engine: " + join(extra));
    for (const auto& g : rep.heat.regular()) {
      const auto s = is_symmetry(pde, g, hcfg);
      rep.max_residual = std::max(rep.max_residual, s.max_residual);
      check("heat generator " + g.name + " is a symmetry", s.verdict == Tri::Yes,
            print_generator(g));
    }
    const auto& gens = rep.heat.gens;
    std::set<std::pair<std::string, std::string>> listed;
    for (const auto& b : c.brackets) {
      listed.insert({b.x, b.y});
      listed.insert({b.y, b.x});
      const auto ix = rep.heat.find(b.x), iy = rep.heat.find(b.y);
      if (!ix || !iy) {
        check("[" + b.x + "," + b.y + "]", false, "generator missing");
        continue;
      }
      PointGenerator want_g = commutator(gens[*ix], gens[*ix]);  // zero template
      for (const auto& [name, k] : b.result) {
        const auto ik = rep.heat.find(name);
        if (!ik) continue;
        want_g = want_g + Expr(k) * gens[*ik];
      }
      const PointGenerator got_g = commutator(gens[*ix], gens[*iy]);
      check("[" + b.x + "," + b.y + "] = " + print_combination(b.result),
            same_generator(got_g, want_g), "engine: " + print_generator(got_g));
    }
    if (c.table_complete)
      for (const auto& b : rep.heat.table) {
        const auto& x = gens[b.i].name;
        const auto& y = gens[b.j].name;
        if (listed.count({x, y})) continue;
        const bool zero = commutator(gens[b.i], gens[b.j]).is_zero();
        if (!zero)
          check("[" + x + "," + y + "] = 0", false,
                "engine: " + print_generator(commutator(gens[b.i], gens[b.j])));
      }
  }

  if (!opts.reductions) return rep;
  for (const auto& t : c.reductions) {
    if (!opts.reduce_by.empty() && t.by != opts.reduce_by) continue;
    const auto& z = rep.heat.at(t.by);
    const std::string tag = "reduction by " + t.by;
    try {
      const InvariantChart ch = invariants_for(z, t.names);
      const ReducedPDE red = reduce_pde(pde, z, ch, cfg);
      if (t.checked)
        check(tag + ": reduced equation", same_pde_up_to_scale(red.pde, t.expected),
              describe(red.pde));
      const SymmetryAlgebra found = run_search(t.search, red);
      ReductionRun run{t, classify_reduction(pde, rep.heat, z, red, found, cfg)};
      if (!t.checked) {
        check(tag, true, describe(red.pde));
        rep.reductions.push_back(std::move(run));
        continue;
      }
      std::vector<std::string> inh;
      for (const auto& ii : run.report.inherited) inh.push_back(ii.source);
      auto a = inh, b = t.inherited;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      check(tag + ": inherited " + join(t.inherited), a == b, "engine: " + join(inh));
      std::vector<std::string> t2;
      for (const auto& g : run.report.type2) t2.push_back(print_generator(g));
      std::vector<std::string> want_t2;
      for (const auto& g : t.type2) want_t2.push_back(print_generator(g));
      check(tag + ": Type II " + join(want_t2),
            same_lines_mod_scaling(run.report.type2, t.type2), "engine: " + join(t2));
      rep.reductions.push_back(std::move(run));
    } catch (const std::exception& e) {
      check(tag, false, e.what());
    }
  }
  return rep;
}

}  // namespace symred
