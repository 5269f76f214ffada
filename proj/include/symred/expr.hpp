#ifndef SYMRED_EXPR_HPP
#define SYMRED_EXPR_HPP

// Immutable symbolic expressions over exact rationals.
//
// Every Expr is kept in canonical form by construction: sums and products are
// flattened, like terms are collected, products of sums are expanded, and
// factors are ordered by a fixed total order (numbers < symbols < powers <
// sums < function kernels). Two expressions that are equal as polynomials in
// their atoms therefore compare structurally equal.
//
// Atoms that may carry a rational exponent inside a monomial:
//   * symbols                       x^(2/3)
//   * integer radicals              2^(1/2)
//   * sums that are not expanded    (1 + y^2/4)^(-2)
//   * function kernels              ln(x), sin(x), exp(a) (exponent always 1)
//   * powers with symbolic exponent x^n
//
// Simplifications that need a branch choice (sqrt, powers of products, the
// optional logarithm expansion) use the positive real branch.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symred/rational.hpp"

namespace symred {

enum class Kind : std::uint8_t { Number, Symbol, Power, Product, Sum, Function };

// Alphabetical, which is also the kernel order used by the normal form.
enum class Func : std::uint8_t { Cos, Exp, Ln, Sin, Tan };

std::string_view func_name(Func f);

struct Node;
struct Term;
struct Factor;
using Monomial = std::vector<Factor>;

class Expr {
 public:
  Expr();
  Expr(int v);           // NOLINT(implicit)
  Expr(std::int64_t v);  // NOLINT(implicit)
  Expr(const Rational& q);  // NOLINT(implicit)

  static Expr symbol(std::string_view name);

  Kind kind() const;
  bool is_number() const { return kind() == Kind::Number; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_zero() const;
  bool is_one() const;

  /// Value of a Number; coefficient of a Product; 1 otherwise.
  const Rational& number() const;
  const std::string& name() const;
  Func func() const;
  /// Argument of a Function node.
  const Expr& arg() const;
  /// Terms of a Sum node (at least two).
  const std::vector<Term>& terms() const;
  /// Factors of a Product node, or the single factor of a rational Power.
  const Monomial& factors() const;
  /// Base and exponent of a Power node.
  const Expr& base() const;
  const Expr& exponent() const;

  std::size_t hash() const;
  /// Bloom mask over the free symbols; a clear bit proves absence.
  std::uint64_t symbol_mask() const;
  bool depends_on(std::string_view symbol) const;
  bool is_constant() const { return symbol_mask() == 0; }

  bool same_node(const Expr& o) const { return node_ == o.node_; }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend struct ExprBuilder;
  std::shared_ptr<const Node> node_;
};

struct Factor {
  Expr base;
  Rational exp;
};

struct Term {
  Rational coeff;
  Monomial mono;
};

/// Total order on canonical expressions; equality is structural.
int compare(const Expr& a, const Expr& b);
int compare(const Monomial& a, const Monomial& b);
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const {
    return compare(a, b) < 0;
  }
};
struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// --- construction -----------------------------------------------------------

Expr sym(std::string_view name);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);
Expr& operator/=(Expr& a, const Expr& b);

Expr pow(const Expr& base, const Expr& exponent);
Expr pow(const Expr& base, const Rational& exponent);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr sqrt(const Expr& a);
Expr apply(Func f, const Expr& a);

/// Sum of many expressions, collected in one pass.
Expr sum(const std::vector<Expr>& parts);
Expr product(const std::vector<Expr>& parts);

/// The expression as a list of terms (one term for non-sums).
std::vector<Term> to_terms(const Expr& e);
/// Canonical expression from arbitrary terms; merges like monomials.
Expr from_terms(std::vector<Term> terms);
/// Expression for a single factor list with unit coefficient.
Expr monomial_expr(const Monomial& mono);

// --- core operations --------------------------------------------------------

using Binding = std::map<std::string, Expr, std::less<>>;
using NumericBinding = std::unordered_map<std::string, double>;

Expr differentiate(const Expr& e, std::string_view symbol);
/// Simultaneous substitution followed by normalization.
Expr substitute(const Expr& e, const Binding& b);
double evaluate(const Expr& e, const NumericBinding& b);

struct NormalizeOptions {
  /// ln of products and powers split into sums of logarithms (positive
  /// branch); ln of integers split over primes.
  bool expand_logs = false;
  /// cos^2 -> 1 - sin^2 and tan -> sin/cos, used by the zero test.
  bool trig_to_sin = false;
};

/// Re-derives the canonical form; with default options this is the identity
/// on values built through this API.
Expr normalize(const Expr& e, const NormalizeOptions& opts = {});

/// Multiplies through by the smallest powers of unexpanded sum atoms that
/// make every such exponent non-negative. The result vanishes exactly when
/// the input does (the multipliers are assumed nonzero on the domain).
Expr clear_denominators(const Expr& e);

std::set<std::string> free_symbols(const Expr& e);

/// Coefficients of e as a polynomial in `basis_symbols`. Keys are the basis
/// monomials (1 for the constant part). Throws NotPolynomialError when a basis
/// symbol appears with a non-natural exponent or inside a kernel.
std::map<Expr, Expr, ExprLess> collect_coefficients(
    const Expr& e, const std::vector<std::string>& basis_symbols);

// --- text -------------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class NotPolynomialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Expr parse_expr(std::string_view text);
std::string print_expr(const Expr& e);
inline std::string to_string(const Expr& e) { return print_expr(e); }
std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace symred

#endif  // SYMRED_EXPR_HPP
