#include "symred/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

namespace symred {

struct Node {
  Kind kind = Kind::Number;
  std::size_t hash = 0;
  std::uint64_t mask = 0;
  Rational value;          // Number value, Product coefficient
  std::string name;        // Symbol
  Func func = Func::Exp;   // Function
  std::vector<Expr> kids;  // Function: {arg}; Power: {base, exponent}
  std::vector<Term> terms; // Sum
  Monomial mono;           // Product, rational Power
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t symbol_bit(std::string_view name) {
  return std::uint64_t{1} << (std::hash<std::string_view>{}(name) % 64);
}

const Rational kOne(1);
const std::string kEmptyName;
const Monomial kEmptyMono;
const std::vector<Term> kEmptyTerms;

std::size_t mono_hash(const Monomial& m, std::uint64_t& mask) {
  std::size_t h = 17;
  for (const auto& f : m) {
    h = mix(h, f.base.hash());
    h = mix(h, f.exp.hash());
    mask |= f.base.symbol_mask();
  }
  return h;
}

}  // namespace

struct ExprBuilder {
  static Expr wrap(std::shared_ptr<Node> n) { return Expr(std::move(n)); }

  static Expr number(const Rational& q) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = q;
    n->hash = mix(1, q.hash());
    return wrap(std::move(n));
  }
  static Expr symbol(std::string_view name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Symbol;
    n->name = std::string(name);
    n->hash = mix(2, std::hash<std::string_view>{}(name));
    n->mask = symbol_bit(name);
    return wrap(std::move(n));
  }
  static Expr function(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Function;
    n->func = f;
    n->hash = mix(mix(6, static_cast<std::size_t>(f)), arg.hash());
    n->mask = arg.symbol_mask();
    n->kids.push_back(std::move(arg));
    return wrap(std::move(n));
  }
  // Power with a symbolic (or non-foldable) exponent; treated as an atom.
  static Expr generic_power(Expr base, Expr exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->hash = mix(mix(3, base.hash()), exponent.hash());
    n->mask = base.symbol_mask() | exponent.symbol_mask();
    n->kids = {std::move(base), std::move(exponent)};
    return wrap(std::move(n));
  }
  // Single factor with unit coefficient, exponent != 1.
  static Expr rational_power(Factor f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->kids = {f.base, number(f.exp)};
    n->mono.push_back(std::move(f));
    n->hash = mix(3, mono_hash(n->mono, n->mask));
    return wrap(std::move(n));
  }
  static Expr product(const Rational& c, Monomial m) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->value = c;
    n->mono = std::move(m);
    n->hash = mix(mix(4, c.hash()), mono_hash(n->mono, n->mask));
    return wrap(std::move(n));
  }
  static Expr sum(std::vector<Term> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    std::size_t h = 5;
    for (const auto& t : terms) {
      h = mix(h, t.coeff.hash());
      h = mix(h, mono_hash(t.mono, n->mask));
    }
    n->hash = h;
    n->terms = std::move(terms);
    return wrap(std::move(n));
  }
  static const Node& node(const Expr& e) { return *e.node_; }
};

namespace {

const Node& N(const Expr& e) { return ExprBuilder::node(e); }

const Expr& zero_expr() {
  static const Expr z = ExprBuilder::number(Rational(0));
  return z;
}
const Expr& one_expr() {
  static const Expr o = ExprBuilder::number(Rational(1));
  return o;
}

bool is_generic_power(const Expr& e) {
  return e.kind() == Kind::Power && N(e).mono.empty();
}
bool is_exp_atom(const Expr& e) {
  return e.kind() == Kind::Function && e.func() == Func::Exp;
}
bool is_ln_atom(const Expr& e) {
  return e.kind() == Kind::Function && e.func() == Func::Ln;
}

}  // namespace

// --- Expr accessors ---------------------------------------------------------

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(int v) : Expr(static_cast<std::int64_t>(v)) {}
Expr::Expr(std::int64_t v)
    : Expr(v == 0 ? zero_expr()
                  : (v == 1 ? one_expr() : ExprBuilder::number(Rational(v)))) {}
Expr::Expr(const Rational& q)
    : Expr(q.is_zero() ? zero_expr()
                       : (q.is_one() ? one_expr() : ExprBuilder::number(q))) {}

Expr Expr::symbol(std::string_view name) { return ExprBuilder::symbol(name); }

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const {
  return node_->kind == Kind::Number && node_->value.is_zero();
}
bool Expr::is_one() const {
  return node_->kind == Kind::Number && node_->value.is_one();
}
const Rational& Expr::number() const {
  if (node_->kind == Kind::Number || node_->kind == Kind::Product)
    return node_->value;
  return kOne;
}
const std::string& Expr::name() const { return node_->name; }
Func Expr::func() const { return node_->func; }
const Expr& Expr::arg() const {
  if (node_->kind != Kind::Function)
    throw std::logic_error("symred::Expr::arg on non-function");
  return node_->kids[0];
}
const std::vector<Term>& Expr::terms() const {
  return node_->kind == Kind::Sum ? node_->terms : kEmptyTerms;
}
const Monomial& Expr::factors() const {
  return node_->mono.empty() ? kEmptyMono : node_->mono;
}
const Expr& Expr::base() const {
  if (node_->kind != Kind::Power)
    throw std::logic_error("symred::Expr::base on non-power");
  return node_->kids[0];
}
const Expr& Expr::exponent() const {
  if (node_->kind != Kind::Power)
    throw std::logic_error("symred::Expr::exponent on non-power");
  return node_->kids[1];
}
std::size_t Expr::hash() const { return node_->hash; }
std::uint64_t Expr::symbol_mask() const { return node_->mask; }

bool Expr::depends_on(std::string_view s) const {
  if (!(node_->mask & symbol_bit(s))) return false;
  switch (node_->kind) {
    case Kind::Number:
      return false;
    case Kind::Symbol:
      return node_->name == s;
    case Kind::Function:
      return node_->kids[0].depends_on(s);
    case Kind::Power:
      if (!node_->mono.empty()) return node_->mono[0].base.depends_on(s);
      return node_->kids[0].depends_on(s) || node_->kids[1].depends_on(s);
    case Kind::Product:
      for (const auto& f : node_->mono)
        if (f.base.depends_on(s)) return true;
      return false;
    case Kind::Sum:
      for (const auto& t : node_->terms)
        for (const auto& f : t.mono)
          if (f.base.depends_on(s)) return true;
      return false;
  }
  return false;
}

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Sin: return "sin";
    case Func::Tan: return "tan";
  }
  return "?";
}

// --- ordering ---------------------------------------------------------------

namespace {
int kind_rank(Kind k) {
  switch (k) {
    case Kind::Number: return 0;
    case Kind::Symbol: return 1;
    case Kind::Power: return 2;
    case Kind::Product: return 3;
    case Kind::Sum: return 4;
    case Kind::Function: return 5;
  }
  return 6;
}

int compare_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i].mono, b[i].mono)) return c;
    if (int c = compare(a[i].coeff, b[i].coeff)) return c;
  }
  return (a.size() > b.size()) - (a.size() < b.size());
}
}  // namespace

int compare(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i].base, b[i].base)) return c;
    if (int c = compare(a[i].exp, b[i].exp)) return c;
  }
  return (a.size() > b.size()) - (a.size() < b.size());
}

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  const Node& x = N(a);
  const Node& y = N(b);
  if (x.kind != y.kind) {
    const int rx = kind_rank(x.kind), ry = kind_rank(y.kind);
    return (rx > ry) - (rx < ry);
  }
  switch (x.kind) {
    case Kind::Number:
      return compare(x.value, y.value);
    case Kind::Symbol: {
      const int c = x.name.compare(y.name);
      return (c > 0) - (c < 0);
    }
    case Kind::Function:
      if (x.func != y.func)
        return static_cast<int>(x.func) < static_cast<int>(y.func) ? -1 : 1;
      return compare(x.kids[0], y.kids[0]);
    case Kind::Power:
      if (int c = compare(x.kids[0], y.kids[0])) return c;
      return compare(x.kids[1], y.kids[1]);
    case Kind::Product:
      if (int c = compare(x.mono, y.mono)) return c;
      return compare(x.value, y.value);
    case Kind::Sum:
      return compare_terms(x.terms, y.terms);
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

// --- canonical assembly -----------------------------------------------------

namespace {

Expr mul(const Expr& a, const Expr& b);
Expr pow_rational(const Expr& base, const Rational& q);
Expr make_exp(const Expr& arg);

// Expression of a single term whose monomial is already canonical.
Expr term_expr(const Rational& c, Monomial mono) {
  if (c.is_zero()) return zero_expr();
  if (mono.empty()) return Expr(c);
  if (c.is_one() && mono.size() == 1) {
    if (mono[0].exp.is_one()) return mono[0].base;
    return ExprBuilder::rational_power(std::move(mono[0]));
  }
  return ExprBuilder::product(c, std::move(mono));
}

// Sorts, merges like monomials and drops zero terms. Monomials must be
// canonical.
Expr collect(std::vector<Term> terms) {
  if (terms.empty()) return zero_expr();
  if (terms.size() > 1) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& a, const Term& b) {
                       return compare(a.mono, b.mono) < 0;
                     });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms.size(); ++r) {
      if (w > 0 && compare(terms[w - 1].mono, terms[r].mono) == 0) {
        terms[w - 1].coeff += terms[r].coeff;
      } else {
        if (w > 0 && terms[w - 1].coeff.is_zero()) --w;
        if (w != r) terms[w] = std::move(terms[r]);
        ++w;
      }
    }
    if (w > 0 && terms[w - 1].coeff.is_zero()) --w;
    terms.resize(w);
  } else if (terms[0].coeff.is_zero()) {
    terms.clear();
  }
  if (terms.empty()) return zero_expr();
  if (terms.size() == 1)
    return term_expr(terms[0].coeff, std::move(terms[0].mono));
  return ExprBuilder::sum(std::move(terms));
}

// Appends the terms of e to out.
void append_terms(const Expr& e, std::vector<Term>& out) {
  const Node& n = N(e);
  switch (n.kind) {
    case Kind::Number:
      if (!n.value.is_zero()) out.push_back({n.value, {}});
      return;
    case Kind::Sum:
      out.insert(out.end(), n.terms.begin(), n.terms.end());
      return;
    case Kind::Product:
      out.push_back({n.value, n.mono});
      return;
    case Kind::Power:
      if (!n.mono.empty()) {
        out.push_back({Rational(1), n.mono});
        return;
      }
      [[fallthrough]];
    default:
      out.push_back({Rational(1), {Factor{e, Rational(1)}}});
  }
}

// Prime factorization by trial division; a large cofactor is kept whole.
std::vector<std::pair<std::int64_t, std::int64_t>> factor_int(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t p = 2; p <= 1000000 && p * p <= n; ++p) {
    if (n % p) continue;
    std::int64_t k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// n^q for a positive integer n, as coefficient times radicals in (0,1).
Expr radical(std::int64_t n, const Rational& q) {
  Rational coeff(1);
  Monomial mono;
  for (auto [p, k] : factor_int(n)) {
    const Rational e = Rational(k) * q;
    const std::int64_t fl = e.floor();
    coeff *= Rational(p).pow(fl);
    const Rational frac = e - Rational(fl);
    if (!frac.is_zero())
      mono.push_back({ExprBuilder::number(Rational(p)), frac});
  }
  return term_expr(coeff, std::move(mono));
}

Expr number_pow(const Rational& c, const Rational& q) {
  if (q.is_zero()) return one_expr();
  if (q.is_integer()) {
    if (c.is_zero() && q.sign() < 0)
      throw std::domain_error("symred: zero raised to a negative power");
    return Expr(c.pow(q.num()));
  }
  if (c.is_zero()) return zero_expr();
  if (c.is_one()) return one_expr();
  if (c.sign() < 0) {
    if (q.den() % 2 == 1) {
      const Expr mag = number_pow(-c, q);
      return q.num() % 2 ? -mag : mag;
    }
    return ExprBuilder::generic_power(Expr(c), Expr(q));
  }
  return mul(radical(c.num(), q), radical(c.den(), -q));
}

Expr expand_int_pow(const Expr& base, std::int64_t k) {
  Expr result = one_expr();
  Expr b = base;
  while (k > 0) {
    if (k & 1) result = mul(result, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return result;
}

struct SumSplit {
  Rational content;  // constant pulled out
  Monomial symbols;  // symbol/kernel content pulled out
  Expr rest;         // remaining sum
};

// Writes a sum as content * symbols * rest, where rest has leading
// coefficient +-1 and no common symbol power. With positive_content the
// rational content is taken positive.
SumSplit split_sum(const Expr& s, bool positive_content) {
  const auto& terms = s.terms();
  // Minimum exponent per plain atom, treating absence as exponent 0.
  std::map<Expr, Rational, ExprLess> min_exp;
  std::map<Expr, std::size_t, ExprLess> seen;
  for (const auto& t : terms)
    for (const auto& f : t.mono) {
      const Kind k = f.base.kind();
      const bool plain = k == Kind::Symbol ||
                         (k == Kind::Function && !is_exp_atom(f.base));
      if (!plain) continue;
      auto it = min_exp.find(f.base);
      if (it == min_exp.end()) {
        min_exp.emplace(f.base, f.exp);
        seen.emplace(f.base, 1);
      } else {
        it->second = std::min(it->second, f.exp);
        ++seen[f.base];
      }
    }
  Monomial content_mono;
  for (auto& [atom, e] : min_exp) {
    Rational m = e;
    if (seen[atom] < terms.size()) m = std::min(m, Rational(0));
    if (!m.is_zero()) content_mono.push_back({atom, m});
  }
  Rational c = terms.front().coeff;
  if (positive_content && c.sign() < 0) c = -c;
  std::vector<Term> rest;
  rest.reserve(terms.size());
  for (const auto& t : terms) {
    Term nt{t.coeff / c, {}};
    std::size_t j = 0;
    for (const auto& f : t.mono) {
      while (j < content_mono.size() && compare(content_mono[j].base, f.base) < 0)
        ++j;
      Rational e = f.exp;
      if (j < content_mono.size() && content_mono[j].base == f.base)
        e -= content_mono[j].exp;
      if (!e.is_zero()) nt.mono.push_back({f.base, e});
    }
    // Atoms absent from this term but with negative content exponent.
    for (const auto& cf : content_mono) {
      if (cf.exp.sign() >= 0) continue;
      bool present = false;
      for (const auto& f : t.mono)
        if (f.base == cf.base) present = true;
      if (!present) nt.mono.push_back({cf.base, -cf.exp});
    }
    std::sort(nt.mono.begin(), nt.mono.end(),
              [](const Factor& a, const Factor& b) {
                return compare(a.base, b.base) < 0;
              });
    rest.push_back(std::move(nt));
  }
  return {c, std::move(content_mono), collect(std::move(rest))};
}

// Sum atoms keep exponents below 1: integer parts are expanded, so
// (x+1)^(3/2) is x*(x+1)^(1/2) + (x+1)^(1/2).
Expr pow_sum(const Expr& s, const Rational& q) {
  if (q.is_integer() && q.sign() > 0) return expand_int_pow(s, q.num());
  if (q > Rational(1)) {
    const std::int64_t k = q.floor();
    return mul(expand_int_pow(s, k), pow_sum(s, q - Rational(k)));
  }
  SumSplit sp = split_sum(s, !q.is_integer());
  Expr result = number_pow(sp.content, q);
  for (const auto& f : sp.symbols)
    result = mul(result, pow_rational(f.base, f.exp * q));
  if (sp.rest.kind() != Kind::Sum) return mul(result, pow_rational(sp.rest, q));
  return mul(result, ExprBuilder::rational_power({sp.rest, q}));
}

// atom^q for an atom that may appear inside a monomial.
Expr atom_pow(const Expr& atom, const Rational& q) {
  if (q.is_zero()) return one_expr();
  switch (atom.kind()) {
    case Kind::Number:
      return number_pow(atom.number(), q);
    case Kind::Sum:
      return pow_sum(atom, q);
    case Kind::Function:
      if (atom.func() == Func::Exp) return make_exp(mul(atom.arg(), Expr(q)));
      [[fallthrough]];
    default:
      if (q.is_one()) return atom;
      return ExprBuilder::rational_power({atom, q});
  }
}

bool needs_resolution(const Monomial& m) {
  int exps = 0;
  for (const auto& f : m) {
    switch (f.base.kind()) {
      case Kind::Number:
        if (f.exp.sign() <= 0 || f.exp >= Rational(1)) return true;
        break;
      case Kind::Sum:
        if (f.exp >= Rational(1)) return true;
        break;
      case Kind::Function:
        if (is_exp_atom(f.base)) {
          if (!f.exp.is_one() || ++exps > 1) return true;
        }
        break;
      default:
        break;
    }
  }
  return false;
}

// Rebuilds a term whose monomial violates a canonical rule.
Expr resolve_term(const Rational& c, const Monomial& m) {
  Monomial plain;
  std::vector<Expr> exp_args;
  std::vector<Expr> extra;
  for (const auto& f : m) {
    const Kind k = f.base.kind();
    if (is_exp_atom(f.base)) {
      exp_args.push_back(mul(f.base.arg(), Expr(f.exp)));
    } else if ((k == Kind::Number &&
                (f.exp.sign() <= 0 || f.exp >= Rational(1))) ||
               (k == Kind::Sum && f.exp >= Rational(1))) {
      extra.push_back(atom_pow(f.base, f.exp));
    } else {
      plain.push_back(f);
    }
  }
  Expr result = term_expr(c, std::move(plain));
  if (!exp_args.empty()) result = mul(result, make_exp(sum(exp_args)));
  for (const auto& x : extra) result = mul(result, x);
  return result;
}

void mul_terms(const Term& a, const Term& b, std::vector<Term>& out) {
  Term r{a.coeff * b.coeff, {}};
  r.mono.reserve(a.mono.size() + b.mono.size());
  std::size_t i = 0, j = 0;
  while (i < a.mono.size() || j < b.mono.size()) {
    int c;
    if (i == a.mono.size()) c = 1;
    else if (j == b.mono.size()) c = -1;
    else c = compare(a.mono[i].base, b.mono[j].base);
    if (c < 0) {
      r.mono.push_back(a.mono[i++]);
    } else if (c > 0) {
      r.mono.push_back(b.mono[j++]);
    } else {
      Rational e = a.mono[i].exp + b.mono[j].exp;
      if (!e.is_zero()) r.mono.push_back({a.mono[i].base, e});
      ++i;
      ++j;
    }
  }
  if (!needs_resolution(r.mono)) {
    out.push_back(std::move(r));
    return;
  }
  append_terms(resolve_term(r.coeff, r.mono), out);
}

Expr scale(const Expr& e, const Rational& q) {
  if (q.is_zero()) return zero_expr();
  if (q.is_one()) return e;
  std::vector<Term> ts;
  append_terms(e, ts);
  for (auto& t : ts) t.coeff *= q;
  return collect(std::move(ts));
}

// s * t for a sum s whose normalized form appears as a denominator atom in
// every term of t: multiply at the atom level so that (x+1)/(x+1) is 1.
bool atom_level_mul(const Expr& s, const Expr& t, Expr& out) {
  if (s.kind() != Kind::Sum) return false;
  std::vector<Term> tt;
  append_terms(t, tt);
  bool candidate = false;
  for (const auto& f : tt.front().mono)
    if (f.base.kind() == Kind::Sum && f.exp.sign() < 0) candidate = true;
  if (!candidate) return false;
  const SumSplit sp = split_sum(s, false);
  for (auto& term : tt) {
    auto it = std::find_if(term.mono.begin(), term.mono.end(),
                           [&](const Factor& f) {
                             return f.exp.sign() < 0 && f.base == sp.rest;
                           });
    if (it == term.mono.end()) return false;
    it->exp += Rational(1);
    if (it->exp.is_zero()) term.mono.erase(it);
  }
  out = mul(scale(monomial_expr(sp.symbols), sp.content), collect(std::move(tt)));
  return true;
}

Expr mul(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return zero_expr();
  if (a.is_number()) return scale(b, a.number());
  if (b.is_number()) return scale(a, b.number());
  Expr combined;
  if (atom_level_mul(a, b, combined) || atom_level_mul(b, a, combined))
    return combined;
  std::vector<Term> ta, tb, out;
  append_terms(a, ta);
  append_terms(b, tb);
  out.reserve(ta.size() * tb.size());
  for (const auto& x : ta)
    for (const auto& y : tb) mul_terms(x, y, out);
  return collect(std::move(out));
}

Expr pow_rational(const Expr& base, const Rational& q) {
  if (q.is_zero()) return one_expr();
  if (q.is_one()) return base;
  switch (base.kind()) {
    case Kind::Number:
      return number_pow(base.number(), q);
    case Kind::Sum:
      return pow_sum(base, q);
    default:
      break;
  }
  std::vector<Term> ts;
  append_terms(base, ts);
  const Term& t = ts.front();
  if (t.coeff.sign() < 0 && !q.is_integer() && q.den() % 2 == 0)
    return ExprBuilder::generic_power(base, Expr(q));
  Expr result = number_pow(t.coeff, q);
  for (const auto& f : t.mono) result = mul(result, atom_pow(f.base, f.exp * q));
  return result;
}

Expr make_exp(const Expr& arg) {
  if (arg.is_zero()) return one_expr();
  std::vector<Term> ts, rest;
  append_terms(arg, ts);
  Expr result = one_expr();
  for (auto& t : ts) {
    if (t.mono.size() == 1 && t.mono[0].exp.is_one() &&
        is_ln_atom(t.mono[0].base)) {
      result = mul(result, pow_rational(t.mono[0].base.arg(), t.coeff));
    } else {
      rest.push_back(std::move(t));
    }
  }
  if (rest.empty()) return result;
  return mul(result, ExprBuilder::function(Func::Exp, collect(std::move(rest))));
}

bool leading_negative(const Expr& e) {
  std::vector<Term> ts;
  append_terms(e, ts);
  return !ts.empty() && ts.front().coeff.sign() < 0;
}

}  // namespace

// --- public construction ----------------------------------------------------

Expr sym(std::string_view name) { return Expr::symbol(name); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<Term> ts;
  append_terms(a, ts);
  append_terms(b, ts);
  return collect(std::move(ts));
}
Expr operator-(const Expr& a) { return scale(a, Rational(-1)); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw std::domain_error("symred: division by zero");
  return mul(a, pow_rational(b, Rational(-1)));
}
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }
Expr& operator/=(Expr& a, const Expr& b) { return a = a / b; }

Expr pow(const Expr& base, const Rational& q) { return pow_rational(base, q); }

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_number()) return pow_rational(base, exponent.number());
  if (base.is_one()) return one_expr();
  if (base.is_zero()) return zero_expr();
  if (is_exp_atom(base)) return make_exp(mul(base.arg(), exponent));
  return ExprBuilder::generic_power(base, exponent);
}

Expr exp(const Expr& a) { return make_exp(a); }

Expr ln(const Expr& a) {
  if (a.is_one()) return zero_expr();
  if (a.is_zero()) throw std::domain_error("symred: ln(0)");
  if (is_exp_atom(a)) return a.arg();
  return ExprBuilder::function(Func::Ln, a);
}

Expr sin(const Expr& a) {
  if (a.is_zero()) return zero_expr();
  if (leading_negative(a)) return -ExprBuilder::function(Func::Sin, -a);
  return ExprBuilder::function(Func::Sin, a);
}
Expr cos(const Expr& a) {
  if (a.is_zero()) return one_expr();
  if (leading_negative(a)) return ExprBuilder::function(Func::Cos, -a);
  return ExprBuilder::function(Func::Cos, a);
}
Expr tan(const Expr& a) {
  if (a.is_zero()) return zero_expr();
  if (leading_negative(a)) return -ExprBuilder::function(Func::Tan, -a);
  return ExprBuilder::function(Func::Tan, a);
}
Expr sqrt(const Expr& a) { return pow_rational(a, Rational(1, 2)); }

Expr apply(Func f, const Expr& a) {
  switch (f) {
    case Func::Cos: return cos(a);
    case Func::Exp: return exp(a);
    case Func::Ln: return ln(a);
    case Func::Sin: return sin(a);
    case Func::Tan: return tan(a);
  }
  return a;
}

Expr sum(const std::vector<Expr>& parts) {
  std::vector<Term> ts;
  for (const auto& p : parts) append_terms(p, ts);
  return collect(std::move(ts));
}

Expr product(const std::vector<Expr>& parts) {
  Expr r = one_expr();
  for (const auto& p : parts) r = mul(r, p);
  return r;
}

std::vector<Term> to_terms(const Expr& e) {
  std::vector<Term> ts;
  append_terms(e, ts);
  return ts;
}

Expr monomial_expr(const Monomial& mono) {
  Expr r = one_expr();
  for (const auto& f : mono) r = mul(r, atom_pow(f.base, f.exp));
  return r;
}

Expr from_terms(std::vector<Term> terms) {
  std::vector<Expr> parts;
  parts.reserve(terms.size());
  for (auto& t : terms) parts.push_back(scale(monomial_expr(t.mono), t.coeff));
  return sum(parts);
}

// --- calculus ---------------------------------------------------------------

namespace {

Expr d_atom(const Expr& a, std::string_view s);

Expr d_term(const Term& t, std::string_view s) {
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < t.mono.size(); ++i) {
    const Factor& f = t.mono[i];
    if (!f.base.depends_on(s)) continue;
    Monomial rest = t.mono;
    const Rational e = f.exp - Rational(1);
    if (e.is_zero()) rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    else rest[i].exp = e;
    parts.push_back(mul(term_expr(t.coeff * f.exp, std::move(rest)),
                        d_atom(f.base, s)));
  }
  return sum(parts);
}

Expr d_expr(const Expr& e, std::string_view s) {
  if (!e.depends_on(s)) return zero_expr();
  std::vector<Term> ts;
  append_terms(e, ts);
  if (ts.size() == 1 && ts[0].mono.size() == 1 && ts[0].coeff.is_one() &&
      ts[0].mono[0].exp.is_one())
    return d_atom(ts[0].mono[0].base, s);
  std::vector<Expr> parts;
  parts.reserve(ts.size());
  for (const auto& t : ts)
    if (!t.mono.empty()) parts.push_back(d_term(t, s));
  return sum(parts);
}

Expr d_atom(const Expr& a, std::string_view s) {
  switch (a.kind()) {
    case Kind::Number:
      return zero_expr();
    case Kind::Symbol:
      return a.name() == s ? one_expr() : zero_expr();
    case Kind::Sum:
    case Kind::Product:
      return d_expr(a, s);
    case Kind::Function: {
      const Expr& x = a.arg();
      const Expr dx = d_expr(x, s);
      if (dx.is_zero()) return zero_expr();
      switch (a.func()) {
        case Func::Exp: return mul(a, dx);
        case Func::Ln: return dx / x;
        case Func::Sin: return mul(cos(x), dx);
        case Func::Cos: return -mul(sin(x), dx);
        case Func::Tan: return mul(one_expr() + pow_rational(a, Rational(2)), dx);
      }
      return zero_expr();
    }
    case Kind::Power: {
      if (!N(a).mono.empty()) return d_expr(a, s);
      const Expr& b = a.base();
      const Expr& p = a.exponent();
      // d(b^p) = b^p (p' ln b + p b'/b)
      return mul(a, d_expr(p, s) * ln(b) + p * d_expr(b, s) / b);
    }
  }
  return zero_expr();
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view symbol) {
  return d_expr(e, symbol);
}

Expr substitute(const Expr& e, const Binding& b) {
  if (b.empty()) return e;
  std::uint64_t bmask = 0;
  for (const auto& kv : b) bmask |= symbol_bit(kv.first);
  std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
    if (!(x.symbol_mask() & bmask)) return x;
    switch (x.kind()) {
      case Kind::Number:
        return x;
      case Kind::Symbol: {
        auto it = b.find(x.name());
        return it == b.end() ? x : it->second;
      }
      case Kind::Function:
        return apply(x.func(), go(x.arg()));
      case Kind::Power:
        if (N(x).mono.empty()) return pow(go(x.base()), go(x.exponent()));
        [[fallthrough]];
      default: {
        std::vector<Term> ts;
        append_terms(x, ts);
        std::vector<Expr> parts;
        parts.reserve(ts.size());
        for (const auto& t : ts) {
          Monomial keep;
          std::vector<Expr> changed;
          for (const auto& f : t.mono) {
            if (f.base.symbol_mask() & bmask)
              changed.push_back(pow_rational(go(f.base), f.exp));
            else
              keep.push_back(f);
          }
          Expr term = term_expr(t.coeff, std::move(keep));
          for (const auto& c : changed) term = mul(term, c);
          parts.push_back(term);
        }
        return sum(parts);
      }
    }
  };
  return go(e);
}

double evaluate(const Expr& e, const NumericBinding& b) {
  const Node& n = N(e);
  switch (n.kind) {
    case Kind::Number:
      return n.value.to_double();
    case Kind::Symbol: {
      auto it = b.find(n.name);
      if (it == b.end())
        throw std::invalid_argument("symred::evaluate: unbound symbol " +
                                    n.name);
      return it->second;
    }
    case Kind::Function: {
      const double x = evaluate(n.kids[0], b);
      switch (n.func) {
        case Func::Exp: return std::exp(x);
        case Func::Ln: return std::log(x);
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Tan: return std::tan(x);
      }
      return NAN;
    }
    case Kind::Power:
      if (n.mono.empty())
        return std::pow(evaluate(n.kids[0], b), evaluate(n.kids[1], b));
      [[fallthrough]];
    case Kind::Product: {
      double v = n.kind == Kind::Product ? n.value.to_double() : 1.0;
      for (const auto& f : n.mono) {
        const double x = evaluate(f.base, b);
        v *= f.exp.is_integer() ? std::pow(x, static_cast<double>(f.exp.num()))
                                : std::pow(x, f.exp.to_double());
      }
      return v;
    }
    case Kind::Sum: {
      double v = 0;
      for (const auto& t : n.terms) {
        double tv = t.coeff.to_double();
        for (const auto& f : t.mono) {
          const double x = evaluate(f.base, b);
          tv *= f.exp.is_integer()
                    ? std::pow(x, static_cast<double>(f.exp.num()))
                    : std::pow(x, f.exp.to_double());
        }
        v += tv;
      }
      return v;
    }
  }
  return NAN;
}

// --- normalization passes ---------------------------------------------------

namespace {

Expr expand_ln(const Expr& a);

Expr ln_of_number(const Rational& q) {
  if (q.sign() <= 0) return ln(Expr(q));
  std::vector<Expr> parts;
  for (auto [p, k] : factor_int(q.num()))
    parts.push_back(Expr(k) * ln(Expr(p)));
  for (auto [p, k] : factor_int(q.den()))
    parts.push_back(Expr(-k) * ln(Expr(p)));
  return sum(parts);
}

Expr ln_of_atom(const Expr& atom) {
  switch (atom.kind()) {
    case Kind::Number:
      return ln_of_number(atom.number());
    case Kind::Sum:
      return expand_ln(atom);
    default:
      return ln(atom);
  }
}

Expr expand_ln(const Expr& a) {
  switch (a.kind()) {
    case Kind::Number:
      return ln_of_number(a.number());
    case Kind::Symbol:
      return ln(a);
    case Kind::Function:
      return ln(a);
    case Kind::Sum: {
      SumSplit sp = split_sum(a, true);
      if (sp.content.is_one() && sp.symbols.empty()) return ln(a);
      Expr r = ln_of_number(sp.content);
      for (const auto& f : sp.symbols) r += Expr(f.exp) * ln_of_atom(f.base);
      return r + expand_ln(sp.rest);
    }
    default:
      break;
  }
  if (is_generic_power(a)) return ln(a);
  std::vector<Term> ts;
  append_terms(a, ts);
  const Term& t = ts.front();
  if (t.coeff.sign() < 0) return ln(a);
  Expr r = ln_of_number(t.coeff);
  for (const auto& f : t.mono) r += Expr(f.exp) * ln_of_atom(f.base);
  return r;
}

Expr rebuild(const Expr& e, const NormalizeOptions& o);

Expr rebuild_factor(const Expr& atom, const Rational& q,
                    const NormalizeOptions& o) {
  const Expr a = rebuild(atom, o);
  if (o.trig_to_sin && a.kind() == Kind::Function) {
    if (a.func() == Func::Tan)
      return mul(pow_rational(sin(a.arg()), q),
                 pow_rational(cos(a.arg()), -q));
    if (a.func() == Func::Cos && q.is_integer() && q.num() >= 2) {
      const Expr s2 = pow_rational(sin(a.arg()), Rational(2));
      return mul(pow_rational(a, Rational(q.num() % 2)),
                 expand_int_pow(one_expr() - s2, q.num() / 2));
    }
  }
  return pow_rational(a, q);
}

Expr rebuild(const Expr& e, const NormalizeOptions& o) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Symbol:
      return e;
    case Kind::Function: {
      const Expr x = rebuild(e.arg(), o);
      if (e.func() == Func::Ln && o.expand_logs) return expand_ln(x);
      if (e.func() == Func::Tan && o.trig_to_sin) return sin(x) / cos(x);
      return apply(e.func(), x);
    }
    case Kind::Power:
      if (N(e).mono.empty())
        return pow(rebuild(e.base(), o), rebuild(e.exponent(), o));
      [[fallthrough]];
    default: {
      std::vector<Term> ts;
      append_terms(e, ts);
      std::vector<Expr> parts;
      parts.reserve(ts.size());
      for (const auto& t : ts) {
        Expr term(t.coeff);
        for (const auto& f : t.mono)
          term = mul(term, rebuild_factor(f.base, f.exp, o));
        parts.push_back(term);
      }
      return sum(parts);
    }
  }
}

}  // namespace

Expr normalize(const Expr& e, const NormalizeOptions& opts) {
  return rebuild(e, opts);
}

Expr clear_denominators(const Expr& e) {
  Expr cur = e;
  for (int iter = 0; iter < 16; ++iter) {
    std::map<Expr, Rational, ExprLess> need;
    for (const auto& t : to_terms(cur))
      for (const auto& f : t.mono)
        if (f.exp.sign() < 0) {
          auto [it, fresh] = need.emplace(f.base, -f.exp);
          if (!fresh) it->second = std::max(it->second, -f.exp);
        }
    if (need.empty()) break;
    // Multiply atom-wise so that s^-1 * s cancels before any expansion.
    Term m{Rational(1), {}};
    for (const auto& [atom, q] : need) m.mono.push_back({atom, q});
    std::vector<Term> out;
    for (const auto& t : to_terms(cur)) mul_terms(t, m, out);
    cur = collect(std::move(out));
  }
  return cur;
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    const Node& n = N(x);
    switch (n.kind) {
      case Kind::Number: return;
      case Kind::Symbol: out.insert(n.name); return;
      case Kind::Function: go(n.kids[0]); return;
      case Kind::Power:
        if (n.mono.empty()) {
          go(n.kids[0]);
          go(n.kids[1]);
          return;
        }
        [[fallthrough]];
      case Kind::Product:
        for (const auto& f : n.mono) go(f.base);
        return;
      case Kind::Sum:
        for (const auto& t : n.terms)
          for (const auto& f : t.mono) go(f.base);
        return;
    }
  };
  go(e);
  return out;
}

std::map<Expr, Expr, ExprLess> collect_coefficients(
    const Expr& e, const std::vector<std::string>& basis) {
  std::map<Expr, std::vector<Term>, ExprLess> acc;
  for (const auto& t : to_terms(e)) {
    Monomial key, rest;
    for (const auto& f : t.mono) {
      const bool is_basis =
          f.base.is_symbol() &&
          std::find(basis.begin(), basis.end(), f.base.name()) != basis.end();
      if (is_basis) {
        if (!f.exp.is_integer() || f.exp.sign() < 0)
          throw NotPolynomialError("not polynomial in " + f.base.name() +
                                   ": exponent " + f.exp.str());
        key.push_back(f);
        continue;
      }
      for (const auto& s : basis)
        if (f.base.depends_on(s))
          throw NotPolynomialError("not polynomial in " + s + ": appears in " +
                                   print_expr(f.base));
      rest.push_back(f);
    }
    acc[term_expr(Rational(1), std::move(key))].push_back(
        {t.coeff, std::move(rest)});
  }
  std::map<Expr, Expr, ExprLess> out;
  for (auto& [k, ts] : acc) {
    Expr c = collect(std::move(ts));
    if (!c.is_zero()) out.emplace(k, c);
  }
  return out;
}

// --- printing ---------------------------------------------------------------

namespace {

std::string print(const Expr& e);

std::string exponent_str(const Rational& q) {
  if (q.is_integer() && q.sign() > 0) return q.str();
  return "(" + q.str() + ")";
}

bool simple_base(const Expr& b) {
  return b.kind() == Kind::Symbol || b.kind() == Kind::Function ||
         (b.kind() == Kind::Number && b.number().is_integer() &&
          b.number().sign() > 0);
}

std::string atom_str(const Expr& a) {
  switch (a.kind()) {
    case Kind::Symbol:
      return a.name();
    case Kind::Function:
      return std::string(func_name(a.func())) + "(" + print(a.arg()) + ")";
    case Kind::Number:
      return simple_base(a) ? a.number().str() : "(" + a.number().str() + ")";
    case Kind::Power: {
      const Expr& b = a.base();
      const Expr& p = a.exponent();
      std::string s = simple_base(b) ? print(b) : "(" + print(b) + ")";
      s += "^";
      s += simple_base(p) ? print(p) : "(" + print(p) + ")";
      return s;
    }
    default:
      return "(" + print(a) + ")";
  }
}

std::string factor_str(const Factor& f) {
  std::string s = atom_str(f.base);
  if (is_generic_power(f.base) && !f.exp.is_one()) s = "(" + s + ")";
  if (!f.exp.is_one()) s += "^" + exponent_str(f.exp);
  return s;
}

// Prints |coeff| * mono. Sets `risky` when the text starts with a factor
// that a leading unary minus would capture before '^'.
std::string term_body(const Rational& coeff, const Monomial& mono,
                      bool& risky) {
  const Rational c = coeff.sign() < 0 ? -coeff : coeff;
  std::vector<std::string> num, den;
  for (const auto& f : mono) {
    // 1/(a+b)^2 would reread as the inverse of an expanded square.
    const bool keep_up = f.base.kind() == Kind::Sum && f.exp.is_integer() &&
                         f.exp < Rational(-1);
    if (f.exp.sign() > 0 || keep_up) {
      num.push_back(factor_str(f));
    } else {
      den.push_back(factor_str(Factor{f.base, -f.exp}));
    }
  }
  std::string s;
  risky = false;
  if (c.num() != 1 || num.empty()) {
    s = std::to_string(c.num());
  } else {
    const Factor* first = nullptr;
    for (const auto& f : mono)
      if (f.exp.sign() > 0 ||
          (f.base.kind() == Kind::Sum && f.exp < Rational(-1) &&
           f.exp.is_integer())) {
        first = &f;
        break;
      }
    risky = first && (!first->exp.is_one() || is_generic_power(first->base));
  }
  for (const auto& n : num) {
    if (!s.empty()) s += "*";
    s += n;
  }
  // "x^2/4" would reread as x^(2/4) under a literal grammar reading.
  if (den.empty() && c.den() != 1 && !num.empty() &&
      std::isdigit(static_cast<unsigned char>(s.back()))) {
    risky = false;
    std::string r = c.str();
    for (const auto& n : num) r += "*" + n;
    return r;
  }
  const std::size_t den_count = den.size() + (c.den() != 1 ? 1 : 0);
  if (den_count > 0) {
    std::string d;
    if (c.den() != 1) d = std::to_string(c.den());
    for (const auto& x : den) {
      if (!d.empty()) d += "*";
      d += x;
    }
    s += "/" + (den_count > 1 ? "(" + d + ")" : d);
  }
  return s;
}

std::string signed_term(const Rational& coeff, const Monomial& mono,
                        bool leading) {
  bool risky = false;
  const std::string body = term_body(coeff, mono, risky);
  if (coeff.sign() >= 0) return leading ? body : " + " + body;
  if (!leading) return " - " + body;
  return risky ? "-(" + body + ")" : "-" + body;
}

std::string print(const Expr& e) {
  const Node& n = N(e);
  switch (n.kind) {
    case Kind::Number:
      return n.value.str();
    case Kind::Symbol:
    case Kind::Function:
      return atom_str(e);
    case Kind::Power:
      if (n.mono.empty()) return atom_str(e);
      return signed_term(Rational(1), n.mono, true);
    case Kind::Product:
      return signed_term(n.value, n.mono, true);
    case Kind::Sum: {
      std::string s;
      bool first = true;
      for (const auto& t : n.terms) {
        s += signed_term(t.coeff, t.mono, first);
        first = false;
      }
      return s;
    }
  }
  return "?";
}

// --- parsing ----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_);
  }
  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' ||
            s_[pos_] == '\r'))
      ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_digit() {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9';
  }

  Expr expr() {
    std::vector<Expr> parts{term()};
    for (;;) {
      if (accept('+')) parts.push_back(term());
      else if (accept('-')) parts.push_back(-term());
      else break;
    }
    return sum(parts);
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept('*')) {
        e = e * factor();
      } else if (peek('/')) {
        ++pos_;
        const std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) throw ParseError("division by zero literal", at);
        e = e / d;
      } else {
        break;
      }
    }
    return e;
  }

  // Unary minus binds looser than '^' so "-x^2" means -(x^2), and a
  // rational literal is not formed directly after '^' so "x^2/4" means
  // (x^2)/4.
  Expr factor(bool exponent_position = false) {
    if (accept('-')) return -factor(exponent_position);
    Expr b = atom(!exponent_position);
    if (accept('^')) {
      Expr p = factor(true);
      if (b.is_zero() && p.is_number() && p.number().sign() < 0)
        fail("zero raised to a negative power");
      return pow(b, p);
    }
    return b;
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected integer");
    try {
      return std::stoll(std::string(s_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw ParseError("integer literal too large", start);
    }
  }

  Expr atom(bool allow_ratio = true) {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c >= '0' && c <= '9') {
      const std::int64_t p = integer();
      // integer '/' integer binds as a single rational literal
      const std::size_t save = pos_;
      if (allow_ratio && accept('/') && peek_digit()) {
        const std::size_t at = pos_;
        const std::int64_t q = integer();
        if (q == 0) throw ParseError("division by zero literal", at);
        if (!peek('^')) return Expr(Rational(p, q));
      }
      pos_ = save;
      return Expr(p);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_'))
        ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (peek('(')) {
        static const std::map<std::string, int> funcs{
            {"exp", 0}, {"ln", 1}, {"sin", 2}, {"cos", 3}, {"tan", 4},
            {"sqrt", 5}};
        auto it = funcs.find(id);
        if (it == funcs.end())
          throw ParseError("unknown function '" + id + "'", start);
        ++pos_;
        Expr a = expr();
        expect(')');
        switch (it->second) {
          case 0: return exp(a);
          case 1:
            if (a.is_zero()) throw ParseError("ln of zero", start);
            return ln(a);
          case 2: return sin(a);
          case 3: return cos(a);
          case 4: return tan(a);
          default: return sqrt(a);
        }
      }
      return sym(id);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }
std::string print_expr(const Expr& e) { return print(e); }
std::ostream& operator<<(std::ostream& os, const Expr& e) {
  return os << print_expr(e);
}

}  // namespace symred
