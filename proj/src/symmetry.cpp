#include "symred/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace symred {

namespace {

SampleConfig merged(const SampleConfig& cfg, const Box& box) {
  SampleConfig c = cfg;
  for (const auto& [k, v] : box)
    if (!c.box.count(k)) c.box[k] = v;
  return c;
}

std::string coefficient_str(const Expr& c) {
  if (c.is_one()) return "";
  if (c == Expr(-1)) return "-";
  const std::string s = print_expr(c);
  if (c.kind() == Kind::Sum) return "(" + s + ")*";
  return s + "*";
}

void append_part(std::string& out, std::string part) {
  if (out.empty()) {
    out = std::move(part);
  } else if (part[0] == '-') {
    out += " - " + part.substr(1);
  } else {
    out += " + " + part;
  }
}

std::string unknown_name(std::size_t k) { return "_k" + std::to_string(k); }

Expr combine(const std::vector<Rational>& v, std::size_t offset,
             const std::vector<Expr>& basis) {
  std::vector<Expr> parts;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!v[offset + j].is_zero()) parts.push_back(Expr(v[offset + j]) * basis[j]);
  return sum(parts);
}

Expr linear_ansatz(const std::vector<Expr>& basis, std::size_t offset) {
  std::vector<Expr> parts;
  for (std::size_t j = 0; j < basis.size(); ++j)
    parts.push_back(sym(unknown_name(offset + j)) * basis[j]);
  return sum(parts);
}

}  // namespace

bool PointGenerator::is_zero() const {
  if (marker) return false;
  for (const auto& x : xi)
    if (!x.is_zero()) return false;
  return a.is_zero() && b.is_zero();
}

std::string print_generator(const PointGenerator& g) {
  if (g.marker) return "b(" + [&] {
    std::string s;
    for (const auto& c : g.coords) s += (s.empty() ? "" : ",") + c;
    return s;
  }() + ")*d_" + g.dep;
  std::string out;
  for (std::size_t i = 0; i < g.coords.size(); ++i)
    if (!g.xi[i].is_zero())
      append_part(out, coefficient_str(g.xi[i]) + "d_" + g.coords[i]);
  if (!g.a.is_zero())
    append_part(out, coefficient_str(g.a) + g.dep + "*d_" + g.dep);
  if (!g.b.is_zero()) append_part(out, coefficient_str(g.b) + "d_" + g.dep);
  return out.empty() ? "0" : out;
}

PointGenerator make_generator(std::string name, std::vector<std::string> coords,
                              std::vector<Expr> xi, Expr a, Expr b,
                              std::string dep) {
  if (xi.size() != coords.size())
    throw std::invalid_argument("generator: component count mismatch");
  PointGenerator g;
  g.name = std::move(name);
  g.coords = std::move(coords);
  g.xi = std::move(xi);
  g.a = std::move(a);
  g.b = std::move(b);
  g.dep = std::move(dep);
  return g;
}

PointGenerator scaling_generator(const std::vector<std::string>& coords,
                                 const std::string& dep) {
  return make_generator("X_" + dep, coords,
                        std::vector<Expr>(coords.size(), Expr(0)), Expr(1),
                        Expr(0), dep);
}

PointGenerator marker_generator(const std::vector<std::string>& coords,
                                const std::string& dep) {
  PointGenerator g = make_generator("X_b", coords,
                                    std::vector<Expr>(coords.size(), Expr(0)),
                                    Expr(0), Expr(0), dep);
  g.marker = true;
  return g;
}

PointGenerator operator+(const PointGenerator& x, const PointGenerator& y) {
  if (x.coords != y.coords) throw std::invalid_argument("generator charts differ");
  PointGenerator r = x;
  for (std::size_t i = 0; i < r.xi.size(); ++i) r.xi[i] += y.xi[i];
  r.a += y.a;
  r.b += y.b;
  r.marker = x.marker || y.marker;
  return r;
}

PointGenerator operator*(const Expr& c, const PointGenerator& g) {
  PointGenerator r = g;
  for (auto& x : r.xi) x = c * x;
  r.a = c * r.a;
  r.b = c * r.b;
  return r;
}

bool same_generator(const PointGenerator& x, const PointGenerator& y) {
  if (x.coords != y.coords || x.marker != y.marker) return false;
  for (std::size_t i = 0; i < x.xi.size(); ++i)
    if (!zero_normal_form(x.xi[i] - y.xi[i]).is_zero()) return false;
  return zero_normal_form(x.a - y.a).is_zero() &&
         zero_normal_form(x.b - y.b).is_zero();
}

std::optional<std::size_t> SymmetryAlgebra::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  return std::nullopt;
}

const PointGenerator& SymmetryAlgebra::at(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::out_of_range("no generator named " + name);
  return gens[*i];
}

std::vector<PointGenerator> SymmetryAlgebra::regular() const {
  std::vector<PointGenerator> out;
  for (const auto& g : gens)
    if (!g.marker) out.push_back(g);
  return out;
}

// --- determining equations ---------------------------------------------------

Expr apply_operator(const QuasiLinearPDE& p, const Expr& F) {
  std::vector<Expr> parts;
  const std::size_t n = p.dim();
  std::vector<Expr> d1(n);
  for (std::size_t i = 0; i < n; ++i) d1[i] = differentiate(F, p.coords[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.B[i].is_zero() && !d1[i].is_zero()) parts.push_back(-p.B[i] * d1[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (!p.A[i][j].is_zero() && !d1[i].is_zero())
        parts.push_back(p.A[i][j] * differentiate(d1[i], p.coords[j]));
  }
  return sum(parts);
}

std::vector<Expr> symmetry_residuals(const QuasiLinearPDE& p,
                                     const PointGenerator& g) {
  if (g.coords != p.coords)
    throw std::invalid_argument("generator and equation use different charts");
  const std::size_t n = p.dim();
  const auto act = p.active();
  if (act.empty()) throw std::invalid_argument("A vanishes identically");
  const auto& c = p.coords;
  const Expr u = sym(p.dep);

  // dxi[k][i] = ∂_i ξ^k
  Matrix dxi(n, std::vector<Expr>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) dxi[k][i] = differentiate(g.xi[k], c[i]);

  Matrix LA(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<Expr> parts{apply_vector(g.xi, c, p.A[i][j])};
      for (std::size_t k = 0; k < n; ++k) {
        if (!p.A[k][j].is_zero()) parts.push_back(-p.A[k][j] * dxi[i][k]);
        if (!p.A[i][k].is_zero()) parts.push_back(-p.A[i][k] * dxi[j][k]);
      }
      LA[i][j] = LA[j][i] = sum(parts);
    }

  Matrix Aact(act.size(), std::vector<Expr>(act.size()));
  for (std::size_t i = 0; i < act.size(); ++i)
    for (std::size_t j = 0; j < act.size(); ++j) Aact[i][j] = p.A[act[i]][act[j]];
  const Matrix Ainv = inverse(Aact);
  std::vector<Expr> tr;
  for (std::size_t i = 0; i < act.size(); ++i)
    for (std::size_t j = 0; j < act.size(); ++j)
      if (!Ainv[j][i].is_zero() && !LA[act[i]][act[j]].is_zero())
        tr.push_back(LA[act[i]][act[j]] * Ainv[j][i]);
  const Expr lam_a = sum(tr) / Expr(static_cast<std::int64_t>(act.size()));
  const Expr lam = lam_a + g.a;

  std::vector<Expr> out;
  // zeroth order
  {
    std::vector<Expr> parts;
    const Expr eta = g.a * u + g.b;
    for (std::size_t i = 0; i < n; ++i) {
      const Expr da = differentiate(g.a, c[i]), db = differentiate(g.b, c[i]);
      for (std::size_t j = 0; j < n; ++j)
        if (!p.A[i][j].is_zero())
          parts.push_back(p.A[i][j] * (differentiate(da, c[j]) * u +
                                       differentiate(db, c[j])));
      if (!p.B[i].is_zero()) parts.push_back(-p.B[i] * (da * u + db));
    }
    if (!p.f.is_zero()) {
      parts.push_back(-apply_vector(g.xi, c, p.f));
      parts.push_back(-eta * differentiate(p.f, p.dep));
      parts.push_back(lam * p.f);
    }
    out.push_back(sum(parts));
  }
  // first order
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Expr> parts;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (!p.A[i][j].is_zero())
          parts.push_back(p.A[i][j] * differentiate(dxi[k][i], c[j]));
      if (!p.A[i][k].is_zero())
        parts.push_back(Expr(-2) * p.A[i][k] * differentiate(g.a, c[i]));
      if (!p.B[i].is_zero()) parts.push_back(-p.B[i] * dxi[k][i]);
    }
    parts.push_back(apply_vector(g.xi, c, p.B[k]));
    parts.push_back((g.a - lam) * p.B[k]);
    out.push_back(sum(parts));
  }
  // second order
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      out.push_back(LA[i][j] - lam_a * p.A[i][j]);
  return out;
}

SymmetryCheck is_symmetry(const QuasiLinearPDE& p, const PointGenerator& g,
                          const SampleConfig& cfg0) {
  SymmetryCheck r;
  if (g.marker) {
    r.verdict = Tri::Yes;
    r.exact = true;
    r.note = "arbitrary-solution family, not checked";
    return r;
  }
  const SampleConfig cfg = merged(cfg0, p.box);
  r.exact = true;
  r.verdict = Tri::Yes;
  for (const auto& e : symmetry_residuals(p, g)) {
    const ZeroResult z = is_zero_expr(e, cfg);
    if (z.verdict == ZeroVerdict::Zero) continue;
    r.exact = false;
    r.max_residual = std::max(r.max_residual, z.max_residual);
    r.open_residuals.push_back(e);
    if (z.verdict == ZeroVerdict::NonZero) r.verdict = Tri::No;
    else if (r.verdict == Tri::Yes) r.verdict = Tri::Unknown;
  }
  return r;
}

PointGenerator commutator(const PointGenerator& x, const PointGenerator& y) {
  if (x.coords != y.coords) throw std::invalid_argument("generator charts differ");
  const auto& c = x.coords;
  PointGenerator r;
  r.name = "[" + x.name + "," + y.name + "]";
  r.coords = c;
  r.dep = x.dep;
  r.marker = x.marker || y.marker;
  r.xi.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    r.xi[i] = apply_vector(x.xi, c, y.xi[i]) - apply_vector(y.xi, c, x.xi[i]);
  r.a = apply_vector(x.xi, c, y.a) - apply_vector(y.xi, c, x.a);
  r.b = apply_vector(x.xi, c, y.b) - apply_vector(y.xi, c, x.b) + x.b * y.a -
        y.b * x.a;
  if (r.marker) {
    for (auto& e : r.xi) e = Expr(0);
    r.a = r.b = Expr(0);
  }
  return r;
}

std::optional<std::vector<Rational>> span_coefficients(
    const PointGenerator& target, const std::vector<PointGenerator>& basis) {
  std::vector<std::string> unknowns;
  for (std::size_t k = 0; k < basis.size(); ++k) unknowns.push_back(unknown_name(k));
  auto component = [&](auto get) {
    std::vector<Expr> parts{get(target)};
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Expr e = get(basis[k]);
      if (!e.is_zero()) parts.push_back(-sym(unknowns[k]) * e);
    }
    return sum(parts);
  };
  std::vector<Expr> eqs;
  for (std::size_t i = 0; i < target.coords.size(); ++i)
    eqs.push_back(component([i](const PointGenerator& g) { return g.xi[i]; }));
  eqs.push_back(component([](const PointGenerator& g) { return g.a; }));
  eqs.push_back(component([](const PointGenerator& g) { return g.b; }));
  const auto sol = solve_linear(basis.size(), linearize(eqs, unknowns));
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

void compute_structure(SymmetryAlgebra& alg) {
  alg.table.clear();
  alg.exceptions.clear();
  std::vector<std::size_t> idx;
  std::vector<PointGenerator> basis;
  for (std::size_t i = 0; i < alg.gens.size(); ++i)
    if (!alg.gens[i].marker) {
      idx.push_back(i);
      basis.push_back(alg.gens[i]);
    }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      Bracket br;
      br.i = idx[a];
      br.j = idx[b];
      const PointGenerator c = commutator(basis[a], basis[b]);
      if (auto co = span_coefficients(c, basis)) {
        br.closes = true;
        br.coeffs.assign(alg.gens.size(), Rational(0));
        for (std::size_t k = 0; k < idx.size(); ++k) br.coeffs[idx[k]] = (*co)[k];
      } else {
        alg.exceptions.emplace_back(br.i, br.j);
      }
      alg.table.push_back(std::move(br));
    }
}

// --- factories ---------------------------------------------------------------

SymmetryAlgebra heat_symmetries_from_homothetic(
    const Metric& m, const std::vector<HomotheticEntry>& entries,
    const std::string& time, const std::string& dep) {
  const std::size_t n = m.dim();
  std::vector<std::string> coords{time};
  coords.insert(coords.end(), m.chart.coords.begin(), m.chart.coords.end());
  const Expr t = sym(time);
  SymmetryAlgebra alg;
  std::vector<Expr> zero(n + 1, Expr(0));
  {
    auto xi = zero;
    xi[0] = Expr(1);
    alg.gens.push_back(make_generator("X_" + time, coords, xi, 0, 0, dep));
  }
  alg.gens.push_back(scaling_generator(coords, dep));
  alg.gens.push_back(marker_generator(coords, dep));
  for (const auto& e : entries) {
    if (e.v.xi.size() != n)
      throw std::invalid_argument("entry " + e.name + " has wrong dimension");
    const Expr psi = e.cls.kind == CollineationKind::KV ? Expr(0) : e.cls.psi;
    auto xi = zero;
    xi[0] = Expr(2) * psi * t;
    for (std::size_t i = 0; i < n; ++i) xi[i + 1] = e.v.xi[i];
    alg.gens.push_back(make_generator(e.name, coords, xi, 0, 0, dep));
    if (e.cls.gradient != Tri::Yes) continue;
    if (!e.S)
      throw std::invalid_argument("gradient entry " + e.name + " lacks a potential");
    xi = zero;
    xi[0] = psi * t * t;
    for (std::size_t i = 0; i < n; ++i) xi[i + 1] = t * e.v.xi[i];
    const Expr a = -(*e.S / Expr(2) +
                     Expr(Rational(static_cast<std::int64_t>(n), 2)) * psi * t);
    alg.gens.push_back(make_generator(
        e.grad_name.empty() ? e.name + "_grad" : e.grad_name, coords, xi, a, 0, dep));
  }
  return alg;
}

namespace {

Expr flux_ut_term(const Expr& q, const Expr& u_coeff, const std::string& dep) {
  // -(u_coeff u) q_u + u_coeff q
  const Expr u = sym(dep);
  return -(u_coeff * u) * differentiate(q, dep) + u_coeff * q;
}

}  // namespace

Expr flux_constraint_residual(const Metric& m, const Expr& q,
                              const FluxShapeA& c, const std::string& time,
                              const std::string& dep) {
  const Expr t = sym(time), u = sym(dep);
  const Expr xt = Expr(2) * c.c2 * c.psi * t + c.c1;
  std::vector<Expr> parts{-differentiate(c.a, time) * u,
                          flux_ut_term(q, c.a, dep),
                          -differentiate(xt * q, time)};
  if (!c.Y.empty())
    parts.push_back(-c.c2 * apply_vector(c.Y, m.chart.coords, q));
  return sum(parts);
}

Expr flux_constraint_residual(const Metric& m, const Expr& q,
                              const FluxShapeB& c, Rational dimension,
                              const std::string& time, const std::string& dep) {
  const Expr u = sym(dep);
  const Expr Tt = differentiate(c.T, time);
  const Expr Ttt = differentiate(Tt, time);
  auto intT = integrate(c.T, time);
  if (!intT) throw std::invalid_argument("T(t) outside the integrable classes");
  const Expr acoef = -Tt * c.S / Expr(2) + c.F;
  std::vector<Expr> parts{
      (-Expr(dimension) * Tt * c.psi / Expr(2) + Ttt * c.S / Expr(2) -
       differentiate(c.F, time)) * u,
      flux_ut_term(q, acoef, dep),
      -differentiate(Expr(2) * c.psi * q * *intT, time)};
  if (!c.gradS.empty())
    parts.push_back(-c.T * apply_vector(c.gradS, m.chart.coords, q));
  return sum(parts);
}

namespace {

struct LaurentAnsatz {
  std::vector<Expr> basis;
  std::size_t constant_index = 0;
  std::size_t linear_index = 0;
};

LaurentAnsatz laurent(const std::string& time) {
  LaurentAnsatz L;
  const Expr t = sym(time);
  L.basis.push_back(ln(t));
  for (int k = 3; k >= -3; --k) {
    if (k == 0) L.constant_index = L.basis.size();
    if (k == 1) L.linear_index = L.basis.size();
    L.basis.push_back(pow(t, Rational(k)));
  }
  return L;
}

// Moves the named positions to the end so they become the free variables.
std::vector<std::size_t> order_with_last(std::size_t n,
                                         const std::vector<std::size_t>& last) {
  std::vector<std::size_t> ord;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(last.begin(), last.end(), i) == last.end()) ord.push_back(i);
  ord.insert(ord.end(), last.begin(), last.end());
  return ord;
}

}  // namespace

FluxSolution solve_flux_constraint(const Metric& m, const Expr& q,
                                   const HomotheticEntry& entry,
                                   Rational dimension, const std::string& time,
                                   const std::string& dep) {
  FluxSolution out;
  const LaurentAnsatz L = laurent(time);
  const std::size_t nb = L.basis.size();
  const Expr psi = entry.cls.kind == CollineationKind::KV ? Expr(0) : entry.cls.psi;
  out.basis = "a, T, F in span{ln t, t^k : -3 <= k <= 3}";
  {
    // unknowns: basis coefficients of a, then c1, c2 (kept free when possible)
    const std::size_t nv = nb + 2;
    const auto ord = order_with_last(nv, {L.constant_index, nb, nb + 1});
    std::vector<std::string> names(nv);
    for (std::size_t pos = 0; pos < nv; ++pos) names[ord[pos]] = unknown_name(pos);
    FluxShapeA A;
    std::vector<Expr> ap;
    for (std::size_t j = 0; j < nb; ++j) ap.push_back(sym(names[j]) * L.basis[j]);
    A.a = sum(ap);
    A.c1 = sym(names[nb]);
    A.c2 = sym(names[nb + 1]);
    A.psi = psi;
    A.Y = entry.v.xi;
    const Expr r = flux_constraint_residual(m, q, A, time, dep);
    std::vector<std::string> unk(nv);
    for (std::size_t pos = 0; pos < nv; ++pos) unk[pos] = unknown_name(pos);
    const auto sol = solve_linear(nv, linearize({r}, unk));
    std::vector<Expr> parts;
    for (std::size_t s = 0; s < sol.nullspace.size(); ++s) {
      const std::size_t var = ord[sol.free_vars[s]];
      const std::string pname = var == nb ? "c1" : var == nb + 1 ? "c2"
                                : var == L.constant_index ? "a0"
                                : "k" + std::to_string(var);
      out.params_a.push_back(pname);
      std::vector<Expr> av;
      for (std::size_t j = 0; j < nb; ++j) {
        std::size_t pos = std::find(ord.begin(), ord.end(), j) - ord.begin();
        if (!sol.nullspace[s][pos].is_zero())
          av.push_back(Expr(sol.nullspace[s][pos]) * L.basis[j]);
      }
      parts.push_back(sym(pname) * sum(av));
    }
    out.a = sum(parts);
  }
  if (entry.S) {
    // unknowns: T coefficients, F coefficients; T0, T1, F0 kept free
    const std::size_t nv = 2 * nb;
    const auto ord = order_with_last(
        nv, {nb + L.constant_index, L.constant_index, L.linear_index});
    std::vector<std::string> names(nv);
    for (std::size_t pos = 0; pos < nv; ++pos) names[ord[pos]] = unknown_name(pos);
    FluxShapeB B;
    std::vector<Expr> tp, fp;
    for (std::size_t j = 0; j < nb; ++j) {
      // ln t in T would need ∫ ln t; keep T a Laurent polynomial
      if (j != 0) tp.push_back(sym(names[j]) * L.basis[j]);
      fp.push_back(sym(names[nb + j]) * L.basis[j]);
    }
    B.T = sum(tp);
    B.F = sum(fp);
    B.psi = psi;
    B.S = *entry.S;
    B.gradS = entry.v.xi;
    const Expr r = flux_constraint_residual(m, q, B, dimension, time, dep);
    std::vector<std::string> unk(nv);
    for (std::size_t pos = 0; pos < nv; ++pos) unk[pos] = unknown_name(pos);
    auto eqs = linearize({r}, unk);
    {
      LinearEquation no_ln;  // T has no ln t component
      no_ln.coeffs[std::find(ord.begin(), ord.end(), 0) - ord.begin()] = Rational(1);
      eqs.push_back(no_ln);
    }
    const auto sol = solve_linear(nv, eqs);
    std::vector<Expr> Tparts, Fparts;
    for (std::size_t s = 0; s < sol.nullspace.size(); ++s) {
      const std::size_t var = ord[sol.free_vars[s]];
      const std::string pname = var == L.linear_index ? "T0"
                                : var == L.constant_index ? "T1"
                                : var == nb + L.constant_index ? "F0"
                                : "k" + std::to_string(var);
      out.params_b.push_back(pname);
      std::vector<Expr> tv, fv;
      for (std::size_t j = 0; j < nv; ++j) {
        std::size_t pos = std::find(ord.begin(), ord.end(), j) - ord.begin();
        const Rational& c = sol.nullspace[s][pos];
        if (c.is_zero()) continue;
        (j < nb ? tv : fv).push_back(Expr(c) * L.basis[j % nb]);
      }
      Tparts.push_back(sym(pname) * sum(tv));
      Fparts.push_back(sym(pname) * sum(fv));
    }
    out.T = sum(Tparts);
    out.F = sum(Fparts);
  }
  return out;
}

SymmetryAlgebra flux_symmetries(const Metric& m, const Expr& q,
                                const std::vector<HomotheticEntry>& entries,
                                const std::string& time,
                                const std::string& dep) {
  const std::size_t n = m.dim();
  std::vector<std::string> coords{time};
  coords.insert(coords.end(), m.chart.coords.begin(), m.chart.coords.end());
  const Expr t = sym(time);
  const Rational dim(static_cast<std::int64_t>(n));
  SymmetryAlgebra alg;
  const std::vector<Expr> zero(n + 1, Expr(0));
  auto pick = [](const Expr& e, const std::string& p, const std::vector<std::string>& all) {
    Binding b;
    for (const auto& o : all) b[o] = Expr(o == p ? 1 : 0);
    return substitute(e, b);
  };

  HomotheticEntry none;
  none.v.xi.assign(n, Expr(0));
  none.cls.kind = CollineationKind::KV;
  const FluxSolution base = solve_flux_constraint(m, q, none, dim, time, dep);
  auto has = [](const std::vector<std::string>& v, const char* s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  if (has(base.params_a, "c1")) {
    auto xi = zero;
    xi[0] = Expr(1);
    alg.gens.push_back(make_generator("X_" + time, coords, xi,
                                      pick(base.a, "c1", base.params_a), 0, dep));
  }
  if (has(base.params_a, "a0"))
    alg.gens.push_back(make_generator("X_" + dep, coords, zero,
                                      pick(base.a, "a0", base.params_a), 0, dep));
  alg.gens.push_back(marker_generator(coords, dep));
  for (const auto& k : base.params_a)
    if (k != "c1" && k != "a0" && k != "c2")
      alg.notes.push_back("unexpected free constant " + k + " in a(t)");

  for (const auto& e : entries) {
    const FluxSolution s = solve_flux_constraint(m, q, e, dim, time, dep);
    const Expr psi = e.cls.kind == CollineationKind::KV ? Expr(0) : e.cls.psi;
    if (has(s.params_a, "c2")) {
      auto xi = zero;
      xi[0] = Expr(2) * psi * t;
      for (std::size_t i = 0; i < n; ++i) xi[i + 1] = e.v.xi[i];
      alg.gens.push_back(make_generator(e.name, coords, xi,
                                        pick(s.a, "c2", s.params_a), 0, dep));
    } else {
      alg.notes.push_back(e.name + " does not survive the flux constraint");
    }
    if (!e.S || !has(s.params_b, "T0")) continue;
    const Expr T = pick(s.T, "T0", s.params_b);
    const Expr F = pick(s.F, "T0", s.params_b);
    auto xi = zero;
    xi[0] = Expr(2) * psi * *integrate(T, time);
    for (std::size_t i = 0; i < n; ++i) xi[i + 1] = T * e.v.xi[i];
    const Expr a = -differentiate(T, time) * *e.S / Expr(2) + F;
    alg.gens.push_back(make_generator(
        e.grad_name.empty() ? e.name + "_grad" : e.grad_name, coords, xi, a, 0, dep));
  }
  return alg;
}

SymmetryAlgebra laplace_symmetries_from_ckv(const Metric& m,
                                            const std::vector<ConformalEntry>& ckvs,
                                            const std::string& dep) {
  const QuasiLinearPDE lap = laplace_pde(m, dep);
  const std::size_t n = m.dim();
  const Rational half_2mn(2 - static_cast<std::int64_t>(n), 2);
  SymmetryAlgebra alg;
  alg.gens.push_back(scaling_generator(m.chart.coords, dep));
  alg.gens.push_back(marker_generator(m.chart.coords, dep));
  SampleConfig cfg;
  cfg.box = m.chart.box;
  for (const auto& e : ckvs) {
    const ZeroResult z = is_zero_expr(apply_operator(lap, e.psi), cfg);
    if (z.verdict != ZeroVerdict::Zero) {
      alg.notes.push_back(e.name + " excluded: conformal factor " +
                          print_expr(e.psi) + " is not harmonic");
      continue;
    }
    alg.gens.push_back(make_generator(e.name, m.chart.coords, e.v.xi,
                                      Expr(half_2mn) * e.psi, 0, dep));
  }
  return alg;
}

// --- finite-basis ansatz --------------------------------------------------------

std::vector<Expr> monomial_basis(const std::vector<std::string>& coords,
                                 int degree, const std::vector<Expr>& kernels) {
  std::vector<std::vector<Expr>> by_degree(degree + 1);
  by_degree[0].push_back(Expr(1));
  // exponents listed per coordinate in order, highest degree first later
  std::function<void(std::size_t, int, Expr)> rec = [&](std::size_t i, int d,
                                                        Expr acc) {
    if (i == coords.size()) {
      if (d > 0) by_degree[d].push_back(acc);
      return;
    }
    for (int e = 0; d + e <= degree; ++e)
      rec(i + 1, d + e, acc * pow(sym(coords[i]), Rational(e)));
  };
  rec(0, 0, Expr(1));
  std::vector<Expr> out;
  for (const auto& k : kernels)
    for (int d = degree; d >= 0; --d)
      for (const auto& mono : by_degree[d]) out.push_back(mono * k);
  return out;
}

AnsatzBasis uniform_basis(const std::vector<std::string>& coords, int degree,
                          const std::vector<Expr>& kernels) {
  AnsatzBasis b;
  const auto mono = monomial_basis(coords, degree, kernels);
  b.xi.assign(coords.size(), mono);
  b.a = mono;
  std::string ks;
  for (const auto& k : kernels) ks += (ks.empty() ? "" : ", ") + print_expr(k);
  b.description = "monomials of degree <= " + std::to_string(degree) +
                  " in (" + [&] {
                    std::string s;
                    for (const auto& c : coords) s += (s.empty() ? "" : ",") + c;
                    return s;
                  }() + ") times {" + ks + "}";
  return b;
}

SymmetryAlgebra ansatz_solve_determining(const QuasiLinearPDE& p,
                                         const AnsatzBasis& basis,
                                         const SampleConfig& cfg) {
  const std::size_t n = p.dim();
  if (basis.xi.size() != n)
    throw std::invalid_argument("ansatz basis does not match the chart");
  std::vector<std::size_t> offset;
  std::size_t nv = 0;
  PointGenerator g;
  g.coords = p.coords;
  g.dep = p.dep;
  for (std::size_t i = 0; i < n; ++i) {
    offset.push_back(nv);
    g.xi.push_back(linear_ansatz(basis.xi[i], nv));
    nv += basis.xi[i].size();
  }
  offset.push_back(nv);
  g.a = linear_ansatz(basis.a, nv);
  nv += basis.a.size();
  g.b = Expr(0);
  std::vector<std::string> unk;
  for (std::size_t k = 0; k < nv; ++k) unk.push_back(unknown_name(k));
  const auto sol = solve_linear(nv, linearize(symmetry_residuals(p, g), unk));

  SymmetryAlgebra alg;
  alg.notes.push_back("complete relative to: " + basis.description);
  int count = 0;
  for (const auto& v : sol.nullspace) {
    PointGenerator r;
    r.coords = p.coords;
    r.dep = p.dep;
    for (std::size_t i = 0; i < n; ++i) r.xi.push_back(combine(v, offset[i], basis.xi[i]));
    r.a = combine(v, offset[n], basis.a);
    r.b = Expr(0);
    bool only_scaling = r.a.is_constant();
    for (const auto& x : r.xi) only_scaling = only_scaling && x.is_zero();
    r.name = only_scaling ? "X_" + p.dep : "Z" + std::to_string(++count);
    if (only_scaling) r.a = Expr(1);
    const SymmetryCheck chk = is_symmetry(p, r, cfg);
    if (chk.verdict != Tri::Yes) {
      alg.notes.push_back("dropped unverified solution " + print_generator(r));
      continue;
    }
    alg.gens.push_back(std::move(r));
  }
  alg.gens.push_back(marker_generator(p.coords, p.dep));
  return alg;
}

std::vector<FoundVector> ansatz_solve_collineation(
    const Metric& m, CollineationKind kind,
    const std::vector<std::vector<Expr>>& basis) {
  const std::size_t n = m.dim();
  if (basis.size() != n)
    throw std::invalid_argument("ansatz basis does not match the chart");
  std::vector<std::size_t> offset;
  std::size_t nv = 0;
  VectorField v;
  for (std::size_t i = 0; i < n; ++i) {
    offset.push_back(nv);
    v.xi.push_back(linear_ansatz(basis[i], nv));
    nv += basis[i].size();
  }
  const Matrix L = lie_derivative_metric(v, m);
  Expr psi(0);
  std::size_t psi_index = nv;
  if (kind == CollineationKind::HV) {
    psi = sym(unknown_name(nv));
    ++nv;
  } else if (kind == CollineationKind::CKV) {
    const Matrix gi = inverse_metric(m);
    std::vector<Expr> tr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!gi[j][i].is_zero() && !L[i][j].is_zero()) tr.push_back(L[i][j] * gi[j][i]);
    psi = sum(tr) / Expr(static_cast<std::int64_t>(2 * n));
  }
  std::vector<Expr> eqs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) eqs.push_back(L[i][j] - Expr(2) * psi * m.g[i][j]);
  std::vector<std::string> unk;
  for (std::size_t k = 0; k < nv; ++k) unk.push_back(unknown_name(k));
  const auto sol = solve_linear(nv, linearize(eqs, unk));

  std::vector<FoundVector> out;
  SampleConfig cfg;
  cfg.box = m.chart.box;
  for (const auto& s : sol.nullspace) {
    FoundVector f;
    for (std::size_t i = 0; i < n; ++i) f.v.xi.push_back(combine(s, offset[i], basis[i]));
    if (kind == CollineationKind::HV) {
      f.psi = Expr(s[psi_index]);
      f.kind = f.psi.is_zero() ? CollineationKind::KV : CollineationKind::HV;
      if (!f.psi.is_zero() && !f.psi.is_one()) {
        const Expr inv = Expr(Rational(1) / s[psi_index]);
        for (auto& x : f.v.xi) x = inv * x;
        f.psi = Expr(1);
      }
    } else if (kind == CollineationKind::CKV) {
      const CollineationClass c = classify_collineation(f.v, m, cfg);
      f.kind = c.kind;
      f.psi = c.psi;
    } else {
      f.psi = Expr(0);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace symred
