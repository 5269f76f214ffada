#include "symred/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace symred {

namespace {

std::string temp_name(std::size_t j) { return "_I" + std::to_string(j); }

bool depends_only_on(const Expr& e, const std::vector<std::string>& allowed,
                     const std::vector<std::string>& all) {
  for (const auto& c : all)
    if (std::find(allowed.begin(), allowed.end(), c) == allowed.end() &&
        e.depends_on(c))
      return false;
  return true;
}

bool vanishes(const Expr& e, const SampleConfig& cfg, bool* numeric = nullptr) {
  if (e.is_zero()) return true;
  const ZeroResult z = is_zero_expr(e, cfg);
  if (z.verdict == ZeroVerdict::Zero) return true;
  if (z.verdict == ZeroVerdict::Unknown && z.numerically_zero) {
    if (numeric) *numeric = true;
    return true;
  }
  return false;
}

Expr expand_logs(const Expr& e) {
  NormalizeOptions o;
  o.expand_logs = true;
  return normalize(e, o);
}

}  // namespace

std::string InvariantChart::describe() const {
  std::string s;
  for (std::size_t a = 0; a < new_coords.size(); ++a)
    s += (s.empty() ? "" : ", ") + new_coords[a] + " = " + print_expr(invariants[a]);
  const Expr w = mu.is_one() ? sym(old_dep) : sym(old_dep) / mu;
  s += ", " + new_dep + " = " + print_expr(w);
  return s;
}

InvariantChart invariants_for(const PointGenerator& g,
                              const std::vector<std::string>& names,
                              const std::string& new_dep) {
  if (g.marker) throw UnsupportedGenerator("cannot reduce by the solution family");
  if (!g.b.is_zero())
    throw UnsupportedGenerator("generator has an inhomogeneous u-part");
  const auto& c = g.coords;
  const std::size_t n = c.size();
  std::vector<std::size_t> moving;
  for (std::size_t i = 0; i < n; ++i)
    if (!g.xi[i].is_zero()) moving.push_back(i);
  if (moving.empty()) throw UnsupportedGenerator("generator moves no coordinate");

  std::vector<std::string> fixed_names;
  for (std::size_t i = 0; i < n; ++i)
    if (g.xi[i].is_zero()) fixed_names.push_back(c[i]);
  // translations first, then a component that depends on its own coordinate only
  std::size_t e = moving.front();
  bool chosen = false;
  for (std::size_t i : moving)
    if (g.xi[i].is_constant()) {
      e = i;
      chosen = true;
      break;
    }
  if (!chosen)
    for (std::size_t i : moving) {
      auto allowed = fixed_names;
      allowed.push_back(c[i]);
      if (depends_only_on(g.xi[i], allowed, c)) {
        e = i;
        break;
      }
    }
  const std::string s = c[e];
  const Expr xe = g.xi[e];

  InvariantChart ch;
  ch.old_coords = c;
  ch.old_dep = g.dep;
  ch.new_dep = new_dep;
  ch.eliminated = s;
  // inverse in temporaries; invariants in old coordinates
  Binding inv_tmp;
  Binding tmp_to_old;
  std::vector<std::optional<Expr>> inv(n);
  std::vector<std::size_t> todo;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == e) continue;
    if (g.xi[j].is_zero()) {
      inv_tmp[c[j]] = sym(temp_name(j));
      tmp_to_old[temp_name(j)] = sym(c[j]);
      inv[j] = sym(c[j]);
    } else {
      todo.push_back(j);
    }
  }
  while (!todo.empty()) {
    bool progress = false;
    for (auto it = todo.begin(); it != todo.end();) {
      const std::size_t j = *it;
      Binding b = inv_tmp;
      const Expr f = substitute(g.xi[j] / xe, b);
      bool blocked = false;
      for (std::size_t k : todo)
        if (k != j && f.depends_on(c[k])) blocked = true;
      const Expr yj = sym(c[j]);
      const Expr p = differentiate(f, c[j]);
      if (blocked || p.depends_on(c[j])) {
        ++it;
        continue;
      }
      const Expr r = f - p * yj;
      if (r.depends_on(c[j])) {
        ++it;
        continue;
      }
      auto P = integrate(p, s);
      if (!P) throw UnsupportedGenerator("cannot integrate " + print_expr(p) + " d" + s);
      const Expr E = exp(-*P);
      auto Q = integrate(r * E, s);
      if (!Q)
        throw UnsupportedGenerator("cannot integrate " + print_expr(r * E) + " d" + s);
      inv_tmp[c[j]] = exp(*P) * (sym(temp_name(j)) + *Q);
      inv[j] = substitute(yj * E - *Q, tmp_to_old);
      tmp_to_old[temp_name(j)] = *inv[j];
      it = todo.erase(it);
      progress = true;
    }
    if (!progress)
      throw UnsupportedGenerator("characteristic system is not triangular");
  }
  // dependent variable: du/ds = (a/ξ^e) u
  const Expr fu = substitute(g.a / xe, inv_tmp);
  for (std::size_t k = 0; k < n; ++k)
    if (k != e && fu.depends_on(c[k]))
      throw UnsupportedGenerator("u-component is not reducible along " + s);
  auto Pu = integrate(fu, s);
  if (!Pu) throw UnsupportedGenerator("cannot integrate " + print_expr(fu) + " d" + s);
  ch.mu = substitute(exp(*Pu), tmp_to_old);

  std::size_t auto_index = 0;
  std::size_t slot = 0;
  Binding tmp_to_new;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == e) continue;
    std::string name;
    if (slot < names.size()) name = names[slot];
    else if (g.xi[j].is_zero()) name = c[j];
    else name = "I" + std::to_string(++auto_index);
    ++slot;
    ch.new_coords.push_back(name);
    ch.invariants.push_back(*inv[j]);
    tmp_to_new[temp_name(j)] = sym(name);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (j != e) ch.inverse[c[j]] = substitute(inv_tmp.at(c[j]), tmp_to_new);
  return ch;
}

InvariantCheck verify_invariants(const PointGenerator& g,
                                 const InvariantChart& chart,
                                 const SampleConfig& cfg) {
  InvariantCheck r;
  r.ok = true;
  for (const auto& I : chart.invariants) {
    const Expr x = apply_vector(g.xi, g.coords, I);
    if (!vanishes(x, cfg)) {
      r.ok = false;
      r.residuals.push_back(x);
    }
  }
  // X(u/μ) = (u/μ²)(a μ - X(μ)) - b/μ
  const Expr w = g.a * chart.mu - apply_vector(g.xi, g.coords, chart.mu);
  if (!vanishes(w, cfg) || !vanishes(g.b, cfg)) {
    r.ok = false;
    r.residuals.push_back(w);
  }
  return r;
}

ReducedPDE reduce_pde(const QuasiLinearPDE& p, const PointGenerator& g,
                      const InvariantChart& ch, const SampleConfig& cfg0) {
  if (ch.old_coords != p.coords)
    throw std::invalid_argument("invariant chart does not match the equation");
  SampleConfig cfg = cfg0;
  for (const auto& [k, v] : p.box)
    if (!cfg.box.count(k)) cfg.box[k] = v;
  const InvariantCheck chk = verify_invariants(g, ch, cfg);
  if (!chk.ok) throw std::runtime_error("invariants are not annihilated by the generator");

  const auto& c = p.coords;
  const std::size_t n = c.size(), m = ch.new_coords.size();
  const Expr& mu = ch.mu;
  std::vector<std::vector<Expr>> dI(m, std::vector<Expr>(n));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i) dI[a][i] = differentiate(ch.invariants[a], c[i]);
  std::vector<Expr> dmu(n);
  for (std::size_t i = 0; i < n; ++i) dmu[i] = differentiate(mu, c[i]);

  Matrix At(m, std::vector<Expr>(m, Expr(0)));
  std::vector<Expr> Ca(m, Expr(0));
  std::vector<Expr> c0_parts;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      std::vector<Expr> parts;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!p.A[i][j].is_zero() && !dI[a][i].is_zero() && !dI[b][j].is_zero())
            parts.push_back(p.A[i][j] * dI[a][i] * dI[b][j]);
      At[a][b] = At[b][a] = mu * sum(parts);
    }
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<Expr> parts;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (!p.A[i][j].is_zero())
          parts.push_back(p.A[i][j] * (dmu[i] * dI[a][j] + dmu[j] * dI[a][i] +
                                       mu * differentiate(dI[a][i], c[j])));
      if (!p.B[i].is_zero()) parts.push_back(-p.B[i] * mu * dI[a][i]);
    }
    Ca[a] = sum(parts);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (!p.A[i][j].is_zero()) c0_parts.push_back(p.A[i][j] * differentiate(dmu[i], c[j]));
    if (!p.B[i].is_zero()) c0_parts.push_back(-p.B[i] * dmu[i]);
  }
  const Expr f1 = differentiate(p.f, p.dep);
  if (differentiate(f1, p.dep) != Expr(0))
    throw std::runtime_error("source term is not linear in " + p.dep);
  const Expr f0 = substitute(p.f, {{p.dep, Expr(0)}});
  c0_parts.push_back(-f1 * mu);
  const Expr C0 = sum(c0_parts);

  auto to_new = [&](const Expr& e) { return expand_logs(substitute(e, ch.inverse)); };
  const Expr mu_new = to_new(mu);
  // first nonzero diagonal coefficient fixes the leftover factor g(s)
  Expr K(0);
  for (std::size_t a = 0; a < m; ++a)
    if (!At[a][a].is_zero()) {
      K = to_new(At[a][a] / mu);
      break;
    }
  if (K.is_zero())
    for (std::size_t a = 0; a < m && K.is_zero(); ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (!At[a][b].is_zero()) {
          K = to_new(At[a][b] / mu);
          break;
        }
  if (K.is_zero()) throw std::runtime_error("reduced equation has no second order part");
  const Expr gfac = normalize(K / substitute(K, {{ch.eliminated, Expr(1)}}));

  ReducedPDE r;
  r.chart = ch;
  r.generator = g.name;
  r.divisor = mu * substitute(gfac, [&] {
    Binding b;
    for (std::size_t a = 0; a < m; ++a) b[ch.new_coords[a]] = ch.invariants[a];
    return b;
  }());
  SampleConfig rcfg = cfg;
  bool numeric = false;
  auto finish = [&](const Expr& coeff_old) {
    const Expr e = normalize(to_new(coeff_old) / (mu_new * gfac));
    if (!e.depends_on(ch.eliminated)) return e;
    const Expr d = differentiate(e, ch.eliminated);
    if (!zero_normal_form(d).is_zero() && !vanishes(d, rcfg, &numeric))
      throw std::runtime_error("reduced coefficient " + print_expr(e) +
                               " still depends on " + ch.eliminated);
    return substitute(e, {{ch.eliminated, Expr(1)}});
  };

  QuasiLinearPDE& q = r.pde;
  q.coords = ch.new_coords;
  q.dep = ch.new_dep;
  q.A.assign(m, std::vector<Expr>(m, Expr(0)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      q.A[a][b] = q.A[b][a] = At[a][b].is_zero() ? Expr(0) : finish(At[a][b]);
  for (std::size_t a = 0; a < m; ++a) q.B.push_back(-finish(Ca[a]));
  const Expr w = sym(ch.new_dep);
  q.f = -finish(C0) * w + (f0.is_zero() ? Expr(0) : finish(f0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      if (ch.invariants[a] != sym(c[i])) continue;
      if (const auto it = p.box.find(c[i]); it != p.box.end())
        q.box[ch.new_coords[a]] = it->second;
      if (p.evolution == i) q.evolution = a;
    }
  if (numeric)
    r.caveats.push_back("independence from " + ch.eliminated +
                        " established numerically for some coefficient");
  return r;
}

std::optional<LaplaceForm> laplace_form_detect(const QuasiLinearPDE& p,
                                               std::string* diagnostic) {
  auto fail = [&](const std::string& why) -> std::optional<LaplaceForm> {
    if (diagnostic) *diagnostic = why;
    return std::nullopt;
  };
  if (p.has_ut()) return fail("equation has an evolution term");
  if (!p.f.is_zero()) return fail("equation has a zeroth order term");
  const std::size_t n = p.dim();
  if (n <= 2) return fail("not detectable by this method for dimension <= 2");
  if (p.active().size() != n) return fail("second order part is degenerate");
  Metric g;
  g.chart.coords = p.coords;
  g.chart.box = p.box;
  g.g = inverse(p.A);
  const auto gam = contracted_christoffel(g);
  VectorField v;  // ξ^i = g^{ij} ω_j = -(B^i - Γ^i)/(n-2)
  const Expr k(Rational(1, static_cast<std::int64_t>(n) - 2));
  bool trivial = true;
  for (std::size_t i = 0; i < n; ++i) {
    v.xi.push_back(normalize(-(p.B[i] - gam[i]) * k));
    if (!zero_normal_form(v.xi.back()).is_zero()) trivial = false;
  }
  LaplaceForm out;
  if (trivial) {
    out.N2 = Expr(1);
  } else {
    const PotentialResult pot = gradient_potential(v, g);
    if (!pot.S) return fail("ln N is not a potential: " + pot.diagnostic);
    out.N2 = exp(Expr(2) * *pot.S);
  }
  out.metric = conformal_rescale_metric(g, out.N2);
  const QuasiLinearPDE lap = laplace_pde(out.metric, p.dep);
  for (std::size_t i = 0; i < n; ++i) {
    if (!zero_normal_form(lap.B[i] * out.N2 - p.B[i]).is_zero())
      return fail("first order part does not match after rescaling");
    for (std::size_t j = 0; j < n; ++j)
      if (!zero_normal_form(lap.A[i][j] * out.N2 - p.A[i][j]).is_zero())
        return fail("second order part does not match after rescaling");
  }
  return out;
}

}  // namespace symred
