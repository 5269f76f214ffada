#include "symred/geometry.hpp"

#include <stdexcept>

namespace symred {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

const char* kind_name(CollineationKind k) {
  switch (k) {
    case CollineationKind::KV: return "KV";
    case CollineationKind::HV: return "HV";
    case CollineationKind::CKV: return "CKV";
    case CollineationKind::NotConformal: return "NotConformal";
  }
  return "?";
}

std::size_t Chart::index(const std::string& c) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == c) return i;
  throw std::invalid_argument("chart has no coordinate " + c);
}

void Metric::validate(const SampleConfig& cfg) const {
  const std::size_t n = dim();
  if (g.size() != n)
    throw std::invalid_argument("metric: matrix size does not match chart");
  for (const auto& row : g)
    if (row.size() != n)
      throw std::invalid_argument("metric: matrix is not square");
  if (!is_symmetric(g)) throw std::invalid_argument("metric: not symmetric");
  SampleConfig c = cfg;
  c.box = chart.box;
  if (is_zero_expr(determinant(g), c).verdict != ZeroVerdict::NonZero)
    throw std::invalid_argument("metric: determinant is not provably nonzero");
}

Matrix inverse_metric(const Metric& m) { return inverse(m.g); }

namespace {

// dg[k][i][j] = ∂_k g_ij
std::vector<Matrix> metric_derivatives(const Metric& m) {
  const std::size_t n = m.dim();
  std::vector<Matrix> dg(n, Matrix(n, std::vector<Expr>(n)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        dg[k][i][j] = dg[k][j][i] = differentiate(m.g[i][j], m.chart.coords[k]);
  return dg;
}

Tri zero_tri(const Expr& e, const SampleConfig& cfg, bool* numeric = nullptr) {
  if (e.is_zero()) return Tri::Yes;
  const ZeroResult r = is_zero_expr(e, cfg);
  switch (r.verdict) {
    case ZeroVerdict::Zero: return Tri::Yes;
    case ZeroVerdict::NonZero: return Tri::No;
    case ZeroVerdict::Unknown:
      if (r.numerically_zero) {
        if (numeric) *numeric = true;
        return Tri::Yes;
      }
      return Tri::Unknown;
  }
  return Tri::Unknown;
}

SampleConfig with_box(const SampleConfig& cfg, const Chart& c) {
  SampleConfig r = cfg;
  for (const auto& [k, v] : c.box) r.box[k] = v;
  return r;
}

}  // namespace

std::vector<Matrix> christoffel(const Metric& m) {
  const std::size_t n = m.dim();
  const Matrix gi = inverse_metric(m);
  const auto dg = metric_derivatives(m);
  std::vector<Matrix> gamma(n, Matrix(n, std::vector<Expr>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        std::vector<Expr> parts;
        for (std::size_t l = 0; l < n; ++l) {
          if (gi[i][l].is_zero()) continue;
          const Expr s = dg[j][l][k] + dg[k][l][j] - dg[l][j][k];
          if (!s.is_zero()) parts.push_back(gi[i][l] * s);
        }
        gamma[i][j][k] = gamma[i][k][j] =
            Expr(Rational(1, 2)) * sum(parts);
      }
  return gamma;
}

std::vector<Expr> contracted_christoffel(const Metric& m) {
  const std::size_t n = m.dim();
  const Matrix gi = inverse_metric(m);
  const auto gamma = christoffel(m);
  std::vector<Expr> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> parts;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!gi[j][k].is_zero() && !gamma[i][j][k].is_zero())
          parts.push_back(gi[j][k] * gamma[i][j][k]);
    out[i] = sum(parts);
  }
  return out;
}

QuasiLinearPDE heat_pde(const Metric& m, const Expr& q,
                        const std::string& time, const std::string& dep) {
  const std::size_t n = m.dim();
  const Matrix gi = inverse_metric(m);
  const auto gam = contracted_christoffel(m);
  QuasiLinearPDE p;
  p.coords.push_back(time);
  p.coords.insert(p.coords.end(), m.chart.coords.begin(), m.chart.coords.end());
  p.box = m.chart.box;
  if (!p.box.count(time)) p.box[time] = Interval{0.5, 2.0};
  p.A.assign(n + 1, std::vector<Expr>(n + 1, Expr(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.A[i + 1][j + 1] = gi[i][j];
  p.B.push_back(Expr(1));
  p.B.insert(p.B.end(), gam.begin(), gam.end());
  p.f = q;
  p.dep = dep;
  p.evolution = 0;
  return p;
}

QuasiLinearPDE laplace_pde(const Metric& m, const std::string& dep) {
  QuasiLinearPDE p;
  p.coords = m.chart.coords;
  p.box = m.chart.box;
  p.A = inverse_metric(m);
  p.B = contracted_christoffel(m);
  p.f = Expr(0);
  p.dep = dep;
  return p;
}

Expr apply_vector(const std::vector<Expr>& xi,
                  const std::vector<std::string>& coords, const Expr& f) {
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!xi[i].is_zero() && f.depends_on(coords[i]))
      parts.push_back(xi[i] * differentiate(f, coords[i]));
  return sum(parts);
}

Matrix lie_derivative_metric(const VectorField& v, const Metric& m) {
  const std::size_t n = m.dim();
  if (v.xi.size() != n)
    throw std::invalid_argument("vector field dimension does not match chart");
  const auto& c = m.chart.coords;
  Matrix dxi(n, std::vector<Expr>(n));  // dxi[k][i] = ∂_i ξ^k
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) dxi[k][i] = differentiate(v.xi[k], c[i]);
  Matrix L(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<Expr> parts{apply_vector(v.xi, c, m.g[i][j])};
      for (std::size_t k = 0; k < n; ++k) {
        if (!m.g[k][j].is_zero()) parts.push_back(m.g[k][j] * dxi[k][i]);
        if (!m.g[i][k].is_zero()) parts.push_back(m.g[i][k] * dxi[k][j]);
      }
      L[i][j] = L[j][i] = sum(parts);
    }
  return L;
}

CollineationClass classify_collineation(const VectorField& v, const Metric& m,
                                        const SampleConfig& cfg0) {
  const SampleConfig cfg = with_box(cfg0, m.chart);
  const Matrix L = lie_derivative_metric(v, m);
  const std::size_t n = m.dim();
  CollineationClass out;
  // ψ from the first nonzero metric component, row-major over i <= j.
  Expr psi;
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i)
    for (std::size_t j = i; j < n && !found; ++j)
      if (!m.g[i][j].is_zero()) {
        psi = normalize(L[i][j] / (Expr(2) * m.g[i][j]));
        found = true;
      }
  bool numeric = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Tri z = zero_tri(L[i][j] - Expr(2) * psi * m.g[i][j], cfg, &numeric);
      if (z == Tri::No) {
        out.kind = CollineationKind::NotConformal;
        out.diagnostic = "L_xi g is not proportional to g at component (" +
                         m.chart.coords[i] + "," + m.chart.coords[j] + ")";
        return out;
      }
      if (z == Tri::Unknown) {
        out.kind = CollineationKind::NotConformal;
        out.diagnostic = "undecided component (" + m.chart.coords[i] + "," +
                         m.chart.coords[j] + ")";
        return out;
      }
    }
  out.numeric_only = numeric;
  const Tri psi_zero = zero_tri(psi, cfg, &out.numeric_only);
  if (psi_zero == Tri::Yes) {
    out.kind = CollineationKind::KV;
    out.psi = Expr(0);
  } else {
    bool constant = true;
    for (const auto& c : m.chart.coords)
      if (zero_tri(differentiate(psi, c), cfg, &out.numeric_only) != Tri::Yes)
        constant = false;
    out.kind = constant ? CollineationKind::HV : CollineationKind::CKV;
    out.psi = psi;
  }
  if (out.kind != CollineationKind::CKV) out.gradient = is_gradient(v, m, cfg);
  return out;
}

namespace {
std::vector<Expr> lower(const VectorField& v, const Metric& m) {
  const std::size_t n = m.dim();
  std::vector<Expr> low(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> parts;
    for (std::size_t j = 0; j < n; ++j)
      if (!m.g[i][j].is_zero() && !v.xi[j].is_zero())
        parts.push_back(m.g[i][j] * v.xi[j]);
    low[i] = sum(parts);
  }
  return low;
}
}  // namespace

Tri is_gradient(const VectorField& v, const Metric& m, const SampleConfig& cfg0) {
  const SampleConfig cfg = with_box(cfg0, m.chart);
  const auto low = lower(v, m);
  const auto& c = m.chart.coords;
  Tri result = Tri::Yes;
  for (std::size_t i = 0; i < low.size(); ++i)
    for (std::size_t j = i + 1; j < low.size(); ++j) {
      const Tri z = zero_tri(
          differentiate(low[j], c[i]) - differentiate(low[i], c[j]), cfg);
      if (z == Tri::No) return Tri::No;
      if (z == Tri::Unknown) result = Tri::Unknown;
    }
  return result;
}

std::optional<Expr> integrate(const Expr& e, const std::string& x) {
  if (!e.depends_on(x)) return e * sym(x);
  const Expr X = sym(x);
  std::vector<Expr> parts;
  for (const auto& t : to_terms(e)) {
    Monomial dep, indep;
    for (const auto& f : t.mono) (f.base.depends_on(x) ? dep : indep).push_back(f);
    const Expr c = Expr(t.coeff) * monomial_expr(indep);
    if (dep.empty()) {
      parts.push_back(c * X);
      continue;
    }
    // Optional leading power of x, then at most one kernel.
    Rational k(0);
    std::size_t pos = 0;
    if (dep[0].base == X) {
      k = dep[0].exp;
      pos = 1;
    }
    if (pos == dep.size()) {
      parts.push_back(c * (k == Rational(-1) ? ln(X)
                                             : pow(X, k + Rational(1)) /
                                                   Expr(k + Rational(1))));
      continue;
    }
    if (pos + 1 != dep.size() || !dep[pos].exp.is_one()) return std::nullopt;
    const Expr& kern = dep[pos].base;
    if (kern.kind() != Kind::Function) return std::nullopt;
    const Expr& arg = kern.arg();
    switch (kern.func()) {
      case Func::Ln: {
        if (arg != X) return std::nullopt;
        if (k == Rational(-1)) {
          parts.push_back(c * pow(kern, Rational(2)) / Expr(2));
        } else {
          const Expr k1(k + Rational(1));
          parts.push_back(c * (pow(X, k + Rational(1)) * kern / k1 -
                               pow(X, k + Rational(1)) / (k1 * k1)));
        }
        continue;
      }
      case Func::Exp: {
        const Expr a = differentiate(arg, x);
        if (a.depends_on(x) || !k.is_integer() || k.sign() < 0)
          return std::nullopt;
        // ∫ x^k e = x^k e/a - (k/a) ∫ x^(k-1) e
        Expr acc(0);
        Expr factor(1);
        for (std::int64_t j = k.num(); j >= 0; --j) {
          acc += factor * pow(X, Rational(j)) * kern / a;
          factor = -factor * Expr(j) / a;
        }
        parts.push_back(c * acc);
        continue;
      }
      case Func::Sin:
      case Func::Cos: {
        const Expr a = differentiate(arg, x);
        if (a.depends_on(x) || !k.is_zero()) return std::nullopt;
        parts.push_back(c * (kern.func() == Func::Sin ? -cos(arg) / a
                                                      : sin(arg) / a));
        continue;
      }
      default:
        return std::nullopt;
    }
  }
  return sum(parts);
}

PotentialResult gradient_potential(const VectorField& v, const Metric& m,
                                   const SampleConfig& cfg0) {
  const SampleConfig cfg = with_box(cfg0, m.chart);
  PotentialResult r;
  const Tri closed = is_gradient(v, m, cfg);
  if (closed != Tri::Yes) {
    r.diagnostic = closed == Tri::No ? "lowered field is not closed"
                                     : "closedness undecided";
    return r;
  }
  const auto low = lower(v, m);
  const auto& c = m.chart.coords;
  NormalizeOptions o;
  o.expand_logs = true;
  Expr S(0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Expr rest = normalize(low[i] - differentiate(S, c[i]), o);
    if (rest.is_zero() || zero_tri(rest, cfg) == Tri::Yes) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (rest.depends_on(c[j])) {
        r.diagnostic = "integrand along " + c[i] + " still depends on " + c[j];
        return r;
      }
    auto part = integrate(rest, c[i]);
    if (!part) {
      r.diagnostic = "no antiderivative in the supported classes for " +
                     print_expr(rest) + " d" + c[i];
      return r;
    }
    S += *part;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    if (zero_tri(differentiate(S, c[i]) - low[i], cfg) != Tri::Yes) {
      r.diagnostic = "potential failed verification along " + c[i];
      return r;
    }
  r.S = S;
  return r;
}

Expr conformal_transport(const VectorField& v, const Expr& psi_bar,
                         const Expr& N, const Chart& chart) {
  return normalize(psi_bar - apply_vector(v.xi, chart.coords, N) / N);
}

Metric conformal_rescale_metric(const Metric& m, const Expr& N2) {
  Metric r = m;
  for (auto& row : r.g)
    for (auto& e : row) e = N2 * e;
  return r;
}

}  // namespace symred
