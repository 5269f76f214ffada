#include "symred/catalog.hpp"

#include <stdexcept>

namespace symred {

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

Metric make_metric(std::vector<std::string> coords,
                   const std::vector<std::vector<std::string>>& g, Box box = {}) {
  Metric m;
  m.chart.coords = std::move(coords);
  m.chart.box = std::move(box);
  for (const auto& row : g) {
    m.g.emplace_back();
    for (const auto& e : row) m.g.back().push_back(P(e));
  }
  return m;
}

Metric diag(std::vector<std::string> coords, const std::vector<std::string>& d,
            Box box = {}) {
  std::vector<std::vector<std::string>> g(d.size(), std::vector<std::string>(d.size(), "0"));
  for (std::size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
  return make_metric(std::move(coords), g, std::move(box));
}

DeclaredVector vec(std::string name, const std::vector<std::string>& xi,
                   CollineationKind kind = CollineationKind::KV,
                   const std::string& psi = "0", Tri gradient = Tri::No,
                   std::string heat = "", std::string grad = "") {
  DeclaredVector d;
  d.name = std::move(name);
  for (const auto& s : xi) d.v.xi.push_back(P(s));
  d.kind = kind;
  d.psi = P(psi);
  d.gradient = gradient;
  d.heat_name = heat.empty() ? d.name : std::move(heat);
  d.grad_name = std::move(grad);
  return d;
}

PointGenerator gen(const std::string& name, std::vector<std::string> coords,
                   const std::vector<std::string>& xi, const std::string& a = "0",
                   const std::string& dep = "w") {
  std::vector<Expr> x;
  for (const auto& s : xi) x.push_back(P(s));
  return make_generator(name, std::move(coords), x, P(a), Expr(0), dep);
}

Metric rename(const Metric& m, const std::vector<std::string>& names) {
  Binding b;
  for (std::size_t i = 0; i < names.size(); ++i) b[m.chart.coords[i]] = sym(names[i]);
  Metric r;
  r.chart.coords = names;
  for (const auto& row : m.g) {
    r.g.emplace_back();
    for (const auto& e : row) r.g.back().push_back(normalize(substitute(e, b)));
  }
  return r;
}

/// Δ_g w + drift^i w_i = 0 in the renamed chart.
QuasiLinearPDE laplace_with_drift(const Metric& m, const std::vector<std::string>& names,
                                  const std::vector<std::string>& drift) {
  QuasiLinearPDE p = laplace_pde(rename(m, names), "w");
  for (std::size_t i = 0; i < drift.size(); ++i) p.B[i] = normalize(p.B[i] - P(drift[i]));
  return p;
}

ReducedSearch ansatz_search(int degree, const std::vector<std::string>& kernels) {
  ReducedSearch s;
  s.kind = SearchKind::Ansatz;
  s.degree = degree;
  s.kernels.clear();
  for (const auto& k : kernels) s.kernels.push_back(P(k));
  return s;
}

ExpectedBracket br(std::string x, std::string y,
                   std::vector<std::pair<std::string, Rational>> r) {
  return {std::move(x), std::move(y), std::move(r)};
}

const Tri kYes = Tri::Yes;
const auto kKV = CollineationKind::KV;
const auto kHV = CollineationKind::HV;
const auto kCKV = CollineationKind::CKV;

// --- decomposable -------------------------------------------------------------

CaseStudy decomposable(const std::string& name, const Metric& m, const Metric& block,
                       const std::vector<DeclaredVector>& block_kvs) {
  CaseStudy c;
  c.name = name;
  c.metric = m;
  c.vectors.push_back(vec("X1", {"1", "0", "0"}, kKV, "0", kYes, "X1", "X2"));
  c.extra_heat = {"X1", "X2"};
  for (const auto& k : block_kvs) {
    DeclaredVector full = k;
    full.v.xi.insert(full.v.xi.begin(), Expr(0));
    c.vectors.push_back(full);
    c.extra_heat.push_back(k.heat_name);
  }
  c.brackets = {br("X_t", "X2", {{"X1", 1}}), br("X2", "X1", {{"X_u", Rational(1, 2)}})};
  c.table_complete = block_kvs.empty();

  ReductionTarget r1;
  r1.by = "X1";
  r1.expected = heat_pde(block, Expr(0), "t", "w");
  r1.search.kind = SearchKind::Heat;
  r1.search.metric = block;
  r1.search.vectors = block_kvs;
  r1.inherited = {"X_t"};
  for (const auto& k : block_kvs) r1.inherited.push_back(k.heat_name);

  ReductionTarget r2;
  r2.by = "X2";
  r2.names = {"tau"};
  for (const auto& y : block.chart.coords) r2.names.push_back(y);
  r2.expected = heat_pde(block, P("w/(2*tau)"), "tau", "w");
  r2.search.kind = SearchKind::Flux;
  r2.search.metric = block;
  r2.search.vectors = block_kvs;
  r2.search.q = P("w/(2*tau)");
  r2.search.time = "tau";
  for (const auto& k : block_kvs) r2.inherited.push_back(k.heat_name);
  std::vector<std::string> rc{"tau"};
  std::vector<std::string> xi{"1"};
  for (const auto& y : block.chart.coords) {
    rc.push_back(y);
    xi.push_back("0");
  }
  r2.type2 = {gen("X_tau", rc, xi, "-1/(2*tau)")};
  c.reductions = {r1, r2};
  c.discrepancies.push_back(
      {"flux constraint, gradient shape",
       "-1/2*T'*psi*u term, giving F = -T0*psi*tau",
       "consistency with the homogeneous generators needs -n/2*T'*psi*u, giving "
       "F = -(n+1)/2*T0*psi*tau; the printed form is reproduced at dimension 1"});
  return c;
}

CaseStudy decomposable_flat() {
  const Metric m = diag({"x", "y", "z"}, {"1", "1", "1"});
  CaseStudy c = decomposable("decomposable_flat_1p2", m, diag({"y", "z"}, {"1", "1"}), {});
  c.title = "Decomposable space dx^2 + h with a flat 2-d block";
  return c;
}

CaseStudy decomposable_constcurv(const Rational& K) {
  const Expr k(K);
  const std::string ks = "(" + print_expr(k) + ")";
  const std::string N = "(1 + " + ks + "/4*(y^2 + z^2))";
  const std::string h = N + "^(-2)";
  const Metric m = diag({"x", "y", "z"}, {"1", h, h});
  const Metric block = diag({"y", "z"}, {h, h});
  const std::vector<DeclaredVector> kvs{
      vec("Y1", {"-z", "y"}),
      vec("Y2", {"1 + " + ks + "/4*(y^2 - z^2)", ks + "/2*y*z"}),
      vec("Y3", {ks + "/2*y*z", "1 + " + ks + "/4*(z^2 - y^2)"}),
  };
  CaseStudy c = decomposable("decomposable_constcurv_1p2", m, block, kvs);
  c.title = "Decomposable space dx^2 + N^-2 (dy^2 + dz^2), N = 1 + K/4 (y^2 + z^2), K = " +
            print_expr(k);
  return c;
}

// --- gradient HV: FRW ---------------------------------------------------------------

std::vector<DeclaredVector> frw_conformal() {
  const std::string L = "ln(phi)";
  std::vector<DeclaredVector> v{
      vec("X1", {"0", "1", "0", "0"}),
      vec("X2", {"0", "0", "1", "0"}),
      vec("X3", {"0", "0", "0", "1"}),
      vec("X4", {"0", "y", "-x", "0"}),
      vec("X5", {"0", "z", "0", "-x"}),
      vec("X6", {"0", "0", "z", "-y"}),
      vec("X7", {"phi", "0", "0", "0"}, kHV, "1"),
      vec("X8", {"phi*x", L, "0", "0"}, kCKV, "x"),
      vec("X9", {"phi*y", "0", L, "0"}, kCKV, "y"),
      vec("X10", {"phi*z", "0", "0", L}, kCKV, "z"),
      vec("D", {"phi*" + L, "x", "y", "z"}, kCKV, "1 + " + L),
      vec("S0", {"phi*(" + L + "^2 + x^2 + y^2 + z^2)", "2*x*" + L, "2*y*" + L, "2*z*" + L},
          kCKV, "2*" + L),
  };
  const std::vector<std::string> ax{"x", "y", "z"};
  for (std::size_t a = 0; a < 3; ++a) {
    std::vector<std::string> xi{"-2*phi*" + ax[a] + "*" + L};
    for (std::size_t b = 0; b < 3; ++b)
      xi.push_back(a == b ? "-2*" + ax[a] + "^2 - (" + L + "^2 - x^2 - y^2 - z^2)"
                          : "-2*" + ax[a] + "*" + ax[b]);
    v.push_back(vec("S" + ax[a], xi, kCKV, "-2*" + ax[a]));
  }
  return v;
}

CaseStudy frw() {
  CaseStudy c;
  c.name = "gradient_hv_flat_frw";
  c.title = "Spatially flat FRW space-time dsigma^2 - sigma^2 (dx^2 + dy^2 + dz^2)";
  c.metric = diag({"sigma", "x", "y", "z"}, {"1", "-sigma^2", "-sigma^2", "-sigma^2"},
                  {{"sigma", {0.5, 2.0}}});
  c.vectors = {
      vec("X1", {"0", "1", "0", "0"}), vec("X2", {"0", "0", "1", "0"}),
      vec("X3", {"0", "0", "0", "1"}), vec("X4", {"0", "y", "-x", "0"}),
      vec("X5", {"0", "z", "0", "-x"}), vec("X6", {"0", "0", "z", "-y"}),
      vec("H", {"sigma", "0", "0", "0"}, kHV, "1", kYes, "H1", "H2"),
  };
  c.extra_heat = {"X1", "X2", "X3", "X4", "X5", "X6", "H1", "H2"};
  c.brackets = {
      br("X_t", "H1", {{"X_t", 2}}),
      br("X_t", "H2", {{"H1", 1}, {"X_u", -2}}),
      br("H1", "H2", {{"H2", 2}}),
  };
  c.table_complete = false;
  const std::vector<std::string> names{"phi", "x", "y", "z"};
  const Metric g_red = diag(names, {"1", "-phi^2", "-phi^2", "-phi^2"});
  const auto cands = frw_conformal();

  ReductionTarget h1;
  h1.by = "H1";
  h1.names = names;
  h1.expected = laplace_with_drift(g_red, names, {"phi/2"});
  h1.search.kind = SearchKind::Laplace;
  h1.search.metric = conformal_rescale_metric(g_red, P("exp(phi^2/4)"));
  h1.search.vectors = cands;
  h1.inherited = {"X1", "X2", "X3", "X4", "X5", "X6"};

  ReductionTarget h2;
  h2.by = "H2";
  h2.names = names;
  h2.expected = laplace_pde(g_red, "w");
  h2.search.kind = SearchKind::Laplace;
  h2.search.metric = g_red;
  h2.search.vectors = cands;
  h2.inherited = {"X1", "X2", "X3", "X4", "X5", "X6", "H1"};
  h2.type2 = {gen("X8", names, {"phi*x", "ln(phi)", "0", "0"}, "-x"),
              gen("X9", names, {"phi*y", "0", "ln(phi)", "0"}, "-y"),
              gen("X10", names, {"phi*z", "0", "0", "ln(phi)"}, "-z")};
  h2.type2_paper = h2.type2;
  h2.type2_paper->insert(h2.type2_paper->begin(), gen("X7", names, {"phi", "0", "0", "0"}));
  c.reductions = {h1, h2};
  c.discrepancies = {
      {"H2 invariant", "phi = tau/tau", "phi = sigma/t"},
      {"Type II under H2", "X7, X8-10",
       "X8-10 only: [H1,H2] = 2*H2, so H1 is inherited and its image -phi*d_phi + "
       "4*w*d_w equals -X7 modulo w*d_w"},
  };
  return c;
}

// --- Petrov space-times ---------------------------------------------------------------

CaseStudy petrov_case(std::string name, std::string title, Metric m,
                      std::vector<DeclaredVector> kvs, DeclaredVector hv,
                      std::vector<std::string> names, std::vector<std::string> drift,
                      std::vector<std::string> surviving, ReducedSearch search) {
  CaseStudy c;
  c.name = std::move(name);
  c.title = std::move(title);
  c.metric = m;
  for (std::size_t k = 0; k < kvs.size(); ++k) {
    kvs[k].heat_name = "X" + std::to_string(k + 1);
    c.extra_heat.push_back(kvs[k].heat_name);
  }
  hv.heat_name = "X" + std::to_string(kvs.size() + 1);
  c.extra_heat.push_back(hv.heat_name);
  std::size_t next = kvs.size() + 2;
  for (auto& k : kvs)
    if (k.gradient == Tri::Yes) {
      k.grad_name = "X" + std::to_string(next++);
      c.extra_heat.push_back(k.grad_name);
    }
  c.vectors = kvs;
  c.vectors.push_back(hv);
  c.brackets.push_back(br("X_t", hv.heat_name, {{"X_t", 2}}));
  ReductionTarget r;
  r.by = hv.heat_name;
  r.names = names;
  r.expected = laplace_with_drift(m, names, drift);
  r.search = std::move(search);
  r.inherited = std::move(surviving);
  c.reductions = {r};
  return c;
}

CaseStudy petrov_n() {
  const Metric m = make_metric({"x", "y", "rho", "v"},
                               {{"1", "0", "0", "0"},
                                {"0", "x^2", "0", "0"},
                                {"0", "0", "ln(x^2)", "1"},
                                {"0", "0", "1", "0"}},
                               {{"x", {0.5, 2.0}}});
  CaseStudy c = petrov_case(
      "petrov_N", "Petrov type N: dx^2 + x^2 dy^2 + 2 drho dv + ln(x^2) drho^2", m,
      {vec("K1", {"0", "0", "1", "0"}), vec("K2", {"0", "0", "0", "1"}, kKV, "0", kYes),
       vec("K3", {"0", "1", "0", "0"})},
      vec("H", {"x", "0", "rho", "v - rho"}, kHV, "1"), {"alpha", "delta", "beta", "gamma"},
      {"alpha/2", "0", "beta/2", "gamma/2 - beta/2"}, {"X3"},
      ansatz_search(3, {"1", "ln(alpha)"}));
  c.brackets.push_back(br("X1", "X4", {{"X1", 1}, {"X2", -1}}));
  c.brackets.push_back(br("X2", "X4", {{"X2", 1}}));
  c.brackets.push_back(br("X_t", "X5", {{"X2", 1}}));
  c.brackets.push_back(br("X1", "X5", {{"X_u", Rational(-1, 2)}}));
  c.brackets.push_back(br("X5", "X4", {{"X5", -1}}));
  c.discrepancies = {
      {"extra heat symmetries", "X1-3, X4",
       "also X5 = t*d_v - rho/2*u*d_u: K2 = d_v is a null gradient KV (potential rho)"},
      {"homothetic vector, v-component", "v - 2*rho", "v - rho"},
      {"heat equation, u_vv coefficient", "-2*ln(x^2)", "-ln(x^2)"},
      {"[X1,X4]", "X1 - 2*X2", "X1 - X2"},
      {"invariant gamma", "(v + rho*ln(t))/sqrt(t)", "(v + rho/2*ln(t))/sqrt(t)"},
      {"reduced equation, w_gamma drift", "gamma/2 - beta", "gamma/2 - beta/2"},
  };
  return c;
}

CaseStudy petrov_n_sec2() {
  const Metric m = make_metric({"x", "y", "rho", "v"},
                               {{"1", "0", "0", "0"},
                                {"0", "1", "0", "0"},
                                {"0", "0", "-2*ln(x^2 + y^2)", "1"},
                                {"0", "0", "1", "0"}},
                               {{"x", {0.5, 2.0}}, {"y", {0.5, 2.0}}});
  CaseStudy c = petrov_case(
      "petrov_N_sec2",
      "Petrov type N, second form: dx^2 + dy^2 + 2 drho dv - 2 ln(x^2 + y^2) drho^2", m,
      {vec("K1", {"0", "0", "1", "0"}), vec("K2", {"0", "0", "0", "1"}, kKV, "0", kYes),
       vec("K3", {"-y", "x", "0", "0"})},
      vec("H", {"x", "y", "rho", "v + 2*rho"}, kHV, "1"),
      {"alpha", "beta", "gamma", "delta"}, {"alpha/2", "beta/2", "gamma/2", "delta/2 + gamma"},
      {"X3"}, ansatz_search(3, {"1", "ln(alpha^2 + beta^2)"}));
  c.brackets.push_back(br("X1", "X4", {{"X1", 1}, {"X2", 2}}));
  c.brackets.push_back(br("X2", "X4", {{"X2", 1}}));
  c.brackets.push_back(br("X_t", "X5", {{"X2", 1}}));
  c.brackets.push_back(br("X1", "X5", {{"X_u", Rational(-1, 2)}}));
  c.brackets.push_back(br("X5", "X4", {{"X5", -1}}));
  c.discrepancies = {
      {"extra heat symmetries", "not listed for this form",
       "X1-3, X4 and X5 = t*d_v - rho/2*u*d_u from the null gradient KV d_v"},
      {"homothetic algebra", "not listed for this form",
       "KVs d_rho, d_v, -y*d_x + x*d_y; HV x*d_x + y*d_y + rho*d_rho + (v + 2*rho)*d_v"},
  };
  return c;
}

CaseStudy petrov_d() {
  const Metric m = diag({"x", "y", "rho", "z"}, {"-1", "x^(-2/3)", "-x^(4/3)", "-x^(4/3)"},
                        {{"x", {0.5, 2.0}}});
  CaseStudy c = petrov_case(
      "petrov_D", "Petrov type D: -dx^2 + x^(-2/3) dy^2 - x^(4/3) (drho^2 + dz^2)", m,
      {vec("K1", {"0", "0", "1", "0"}), vec("K2", {"0", "0", "0", "1"}),
       vec("K3", {"0", "1", "0", "0"}), vec("K4", {"0", "0", "z", "-rho"})},
      vec("H", {"x", "4/3*y", "rho/3", "z/3"}, kHV, "1"), {"alpha", "beta", "gamma", "delta"},
      {"alpha/2", "2/3*beta", "gamma/6", "delta/6"}, {"X4"},
      ansatz_search(3, {"1", "alpha^(1/3)", "alpha^(2/3)"}));
  c.brackets.push_back(br("X1", "X5", {{"X1", Rational(1, 3)}}));
  c.brackets.push_back(br("X4", "X1", {{"X2", 1}}));
  c.brackets.push_back(br("X2", "X4", {{"X1", 1}}));
  c.brackets.push_back(br("X2", "X5", {{"X2", Rational(1, 3)}}));
  c.brackets.push_back(br("X3", "X5", {{"X3", Rational(4, 3)}}));
  c.discrepancies = {{"[X4,X1]", "-X2", "X2 (consistent with [X2,X4] = X1)"}};
  return c;
}

CaseStudy petrov_ii() {
  const Metric m = make_metric({"rho", "z", "x", "y"},
                               {{"rho^(-1/2)", "0", "0", "0"},
                                {"0", "rho^(-1/2)", "0", "0"},
                                {"0", "0", "0", "-rho"},
                                {"0", "0", "-rho", "rho*ln(rho)"}},
                               {{"rho", {0.5, 2.0}}});
  CaseStudy c = petrov_case(
      "petrov_II",
      "Petrov type II: rho^(-1/2) (drho^2 + dz^2) - 2 rho dx dy + rho ln(rho) dy^2", m,
      {vec("K1", {"0", "0", "1", "0"}), vec("K2", {"0", "0", "0", "1"}),
       vec("K3", {"0", "1", "0", "0"})},
      vec("H", {"4/3*rho", "4/3*z", "(x + 2*y)/3", "y/3"}, kHV, "1"),
      {"alpha", "beta", "gamma", "delta"},
      {"2/3*alpha", "2/3*beta", "delta/3 + gamma/6", "delta/6"}, {},
      ansatz_search(3, {"1", "ln(alpha)", "alpha^(1/2)"}));
  c.brackets.push_back(br("X1", "X4", {{"X1", Rational(1, 3)}}));
  c.brackets.push_back(br("X3", "X4", {{"X3", Rational(4, 3)}}));
  c.brackets.push_back(br("X2", "X4", {{"X1", Rational(2, 3)}, {"X2", Rational(1, 3)}}));
  c.discrepancies = {
      {"heat equation, u_xx coefficient", "-(1/rho)*epsilon*ln(rho)",
       "-ln(rho)/rho (epsilon is not defined; the operator is derived from the metric)"},
      {"reduced equation, w_gamma drift", "delta/3 - gamma/6", "delta/3 + gamma/6"},
  };
  return c;
}

CaseStudy petrov_iii() {
  const Metric m = make_metric({"rho", "v", "x", "y"},
                               {{"3/2*x", "1", "0", "0"},
                                {"1", "0", "0", "0"},
                                {"0", "0", "v^2/x^3", "0"},
                                {"0", "0", "0", "v^2/x^3"}},
                               {{"v", {0.5, 2.0}}, {"x", {0.5, 2.0}}});
  CaseStudy c = petrov_case(
      "petrov_III", "Petrov type III: 2 drho dv + 3/2 x drho^2 + v^2/x^3 (dx^2 + dy^2)", m,
      {vec("K1", {"1", "0", "0", "0"}), vec("K2", {"0", "0", "0", "1"}),
       vec("K3", {"-rho", "v", "2*x", "2*y"})},
      vec("H", {"rho", "v", "0", "0"}, kHV, "1"), {"beta", "alpha", "gamma", "delta"},
      {"beta/2", "alpha/2", "0", "0"}, {"X2", "X3"}, ansatz_search(3, {"1"}));
  c.brackets.push_back(br("X2", "X3", {{"X2", 2}}));
  c.brackets.push_back(br("X3", "X1", {{"X1", 1}}));
  c.brackets.push_back(br("X1", "X4", {{"X1", 1}}));
  return c;
}

}  // namespace

const char* search_kind_name(SearchKind k) {
  switch (k) {
    case SearchKind::Heat: return "heat factory";
    case SearchKind::Flux: return "flux factory";
    case SearchKind::Laplace: return "Laplace factory";
    case SearchKind::Ansatz: return "ansatz";
  }
  return "?";
}

std::vector<std::string> case_names() {
  return {"decomposable_constcurv_1p2", "decomposable_flat_1p2", "gradient_hv_flat_frw",
          "petrov_D", "petrov_II", "petrov_III", "petrov_N", "petrov_N_sec2"};
}

CaseStudy get_case(const std::string& name, const Rational& K) {
  if (name == "decomposable_flat_1p2") return decomposable_flat();
  if (name == "decomposable_constcurv_1p2") return decomposable_constcurv(K);
  if (name == "gradient_hv_flat_frw") return frw();
  if (name == "petrov_N") return petrov_n();
  if (name == "petrov_N_sec2") return petrov_n_sec2();
  if (name == "petrov_D") return petrov_d();
  if (name == "petrov_II") return petrov_ii();
  if (name == "petrov_III") return petrov_iii();
  throw std::invalid_argument("unknown case: " + name);
}

std::vector<HomotheticEntry> homothetic_entries(const Metric& m,
                                                const std::vector<DeclaredVector>& vs) {
  std::vector<HomotheticEntry> out;
  SampleConfig cfg;
  cfg.box = m.chart.box;
  for (const auto& d : vs) {
    HomotheticEntry e;
    e.name = d.heat_name;
    e.grad_name = d.grad_name;
    e.v = d.v;
    e.cls = classify_collineation(d.v, m, cfg);
    if (e.cls.gradient == Tri::Yes) e.S = gradient_potential(d.v, m, cfg).S;
    out.push_back(std::move(e));
  }
  return out;
}

SymmetryAlgebra heat_algebra(const CaseStudy& c) {
  auto alg = heat_symmetries_from_homothetic(c.metric, homothetic_entries(c.metric, c.vectors));
  compute_structure(alg);
  return alg;
}

SymmetryAlgebra run_search(const ReducedSearch& s, const ReducedPDE& r) {
  const std::string& dep = r.pde.dep;
  switch (s.kind) {
    case SearchKind::Heat:
      return heat_symmetries_from_homothetic(s.metric, homothetic_entries(s.metric, s.vectors),
                                             s.time, dep);
    case SearchKind::Flux:
      return flux_symmetries(s.metric, s.q, homothetic_entries(s.metric, s.vectors), s.time,
                             dep);
    case SearchKind::Laplace: {
      SampleConfig cfg;
      cfg.box = s.metric.chart.box;
      std::vector<ConformalEntry> ckvs;
      for (const auto& d : s.vectors) {
        const auto cls = classify_collineation(d.v, s.metric, cfg);
        if (cls.kind == CollineationKind::NotConformal)
          throw std::runtime_error(d.name + " is not conformal for the search metric");
        ckvs.push_back({d.name, d.v, cls.psi});
      }
      return laplace_symmetries_from_ckv(s.metric, ckvs, dep);
    }
    case SearchKind::Ansatz: {
      SampleConfig cfg;
      cfg.box = r.pde.box;
      return ansatz_solve_determining(r.pde, uniform_basis(r.pde.coords, s.degree, s.kernels),
                                      cfg);
    }
  }
  throw std::logic_error("unknown search kind");
}

}  // namespace symred
