#include "symred/classify.hpp"

#include "symred/zero.hpp"

namespace symred {

namespace {

bool is_scaling(const PointGenerator& g) {
  if (g.marker || !g.b.is_zero() || g.a.is_zero() || !g.a.is_constant()) return false;
  for (const auto& x : g.xi)
    if (!x.is_zero()) return false;
  return true;
}

bool nonzero_multiple(const PointGenerator& g, const PointGenerator& z) {
  const auto c = span_coefficients(g, {z});
  return c && !(*c)[0].is_zero();
}

/// e with the eliminated coordinate set to 1, if e does not depend on it.
std::optional<Expr> drop_eliminated(const Expr& e, const InvariantChart& ch,
                                    const SampleConfig& cfg, bool& numeric) {
  NormalizeOptions o;
  o.expand_logs = true;
  const Expr x = normalize(substitute(e, ch.inverse), o);
  if (!x.depends_on(ch.eliminated)) return x;
  const Expr d = differentiate(x, ch.eliminated);
  if (!zero_normal_form(d).is_zero()) {
    const ZeroResult z = is_zero_expr(d, cfg);
    if (z.verdict == ZeroVerdict::NonZero || !z.numerically_zero) return std::nullopt;
    numeric = true;
  }
  return normalize(substitute(x, {{ch.eliminated, Expr(1)}}));
}

}  // namespace

const char* inheritance_name(Inheritance s) {
  switch (s) {
    case Inheritance::Reducing: return "reducing";
    case Inheritance::Background: return "background";
    case Inheritance::Inherits: return "inherits";
    case Inheritance::Ambiguous: return "ambiguous";
    case Inheritance::NotInherited: return "not inherited";
    case Inheritance::Undetermined: return "undetermined";
  }
  return "?";
}

std::vector<InheritanceEntry> inheritance_map(const SymmetryAlgebra& alg,
                                              const PointGenerator& Z) {
  const auto basis = alg.regular();
  const PointGenerator scale = scaling_generator(Z.coords, Z.dep);
  std::vector<InheritanceEntry> out;
  for (const auto& X : alg.gens) {
    InheritanceEntry e;
    e.name = X.name;
    if (X.marker || is_scaling(X)) {
      e.status = Inheritance::Background;
    } else if (nonzero_multiple(X, Z)) {
      e.status = Inheritance::Reducing;
    } else {
      const PointGenerator c = commutator(X, Z);
      e.bracket = span_coefficients(c, basis);
      if (c.is_zero() || span_coefficients(c, {Z}))
        e.status = Inheritance::Inherits;
      else if (span_coefficients(c, {Z, scale}))
        e.status = Inheritance::Ambiguous;
      else if (e.bracket)
        e.status = Inheritance::NotInherited;
      else
        e.status = Inheritance::Undetermined;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<PointGenerator> push_forward(const PointGenerator& X,
                                           const InvariantChart& ch,
                                           const SampleConfig& cfg) {
  if (X.marker) return marker_generator(ch.new_coords, ch.new_dep);
  if (!X.b.is_zero()) return std::nullopt;
  bool numeric = false;
  PointGenerator r;
  r.name = X.name;
  r.coords = ch.new_coords;
  r.dep = ch.new_dep;
  for (const auto& I : ch.invariants) {
    auto c = drop_eliminated(apply_vector(X.xi, X.coords, I), ch, cfg, numeric);
    if (!c) return std::nullopt;
    r.xi.push_back(*c);
  }
  const Expr a = X.a - apply_vector(X.xi, X.coords, ch.mu) / ch.mu;
  auto c = drop_eliminated(a, ch, cfg, numeric);
  if (!c) return std::nullopt;
  r.a = *c;
  r.b = Expr(0);
  return r;
}

ReductionReport classify_reduction(const QuasiLinearPDE& source,
                                   const SymmetryAlgebra& alg,
                                   const PointGenerator& Z,
                                   const ReducedPDE& reduced,
                                   const SymmetryAlgebra& reduced_syms,
                                   const SampleConfig& cfg0) {
  SampleConfig cfg = cfg0;
  for (const auto& [k, v] : source.box)
    if (!cfg.box.count(k)) cfg.box[k] = v;
  SampleConfig rcfg = cfg0;
  for (const auto& [k, v] : reduced.pde.box)
    if (!rcfg.box.count(k)) rcfg.box[k] = v;

  ReductionReport rep;
  rep.by = Z.name;
  rep.reduced = reduced;
  rep.inheritance = inheritance_map(alg, Z);
  const auto& ch = reduced.chart;
  const auto found = reduced_syms.regular();
  for (const auto& g : found) {
    const auto chk = is_symmetry(reduced.pde, g, rcfg);
    if (chk.verdict == Tri::No)
      throw InconsistencyError("reduced search returned a non-symmetry: " +
                               print_generator(g));
    rep.reduced_symmetries.push_back(g);
  }
  for (const auto& n : reduced_syms.notes) {
    if (n.rfind("complete relative to: ", 0) == 0) {
      rep.basis = n.substr(22);
      rep.caveats.push_back("reduced symmetries, and so the Type II list, are complete only "
                            "within the ansatz basis");
    } else
      rep.caveats.push_back(n);
  }
  if (rep.basis.empty()) rep.basis = "closed-form factory";

  std::vector<PointGenerator> pool{scaling_generator(ch.new_coords, ch.new_dep)};
  for (std::size_t k = 0; k < alg.gens.size(); ++k) {
    const auto& X = alg.gens[k];
    const auto& e = rep.inheritance[k];
    if (e.status == Inheritance::Reducing || e.status == Inheritance::Background)
      continue;
    if (e.status != Inheritance::Inherits && e.status != Inheritance::Ambiguous) {
      rep.lost.push_back(X.name);
      if (e.status == Inheritance::Undetermined)
        rep.caveats.push_back("[" + X.name + ", " + Z.name +
                              "] leaves the recorded algebra");
      continue;
    }
    auto img = push_forward(X, ch, cfg);
    const bool strict = e.status == Inheritance::Inherits;
    if (!img) {
      if (strict)
        throw InconsistencyError(X.name + " commutes into span{" + Z.name +
                                 "} but does not project");
      rep.lost.push_back(X.name);
      rep.caveats.push_back(X.name + ": bracket with " + Z.name +
                            " lies in the u-scaling ideal; it does not project");
      continue;
    }
    const auto chk = is_symmetry(reduced.pde, *img, rcfg);
    if (chk.verdict == Tri::No) {
      if (strict)
        throw InconsistencyError("image of " + X.name +
                                 " is not a symmetry of the reduced equation");
      rep.lost.push_back(X.name);
      rep.caveats.push_back(X.name + ": projects but the image is not a symmetry");
      continue;
    }
    if (chk.verdict == Tri::Unknown)
      rep.caveats.push_back("image of " + X.name + " verified numerically only");
    if (!strict)
      rep.caveats.push_back(X.name + ": bracket with " + Z.name +
                            " lies in the u-scaling ideal; image verified directly");
    InheritedImage ii{X.name, *img, span_coefficients(*img, found).has_value()};
    if (!ii.matched)
      rep.caveats.push_back("image of " + X.name + " is outside the reduced search");
    pool.push_back(ii.image);
    rep.inherited.push_back(std::move(ii));
  }
  for (const auto& g : found) {
    if (is_scaling(g) || span_coefficients(g, pool)) continue;
    rep.type2.push_back(g);
    pool.push_back(g);
  }
  return rep;
}

}  // namespace symred
