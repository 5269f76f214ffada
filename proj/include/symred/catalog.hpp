#ifndef SYMRED_CATALOG_HPP
#define SYMRED_CATALOG_HPP

// Built-in case studies: metrics, declared collineations, expected heat
// symmetry algebras, commutator tables and reductions.

#include <string>
#include <utility>
#include <vector>

#include "symred/classify.hpp"

namespace symred {

struct DeclaredVector {
  std::string name;
  VectorField v;
  CollineationKind kind = CollineationKind::KV;
  Expr psi = Expr(0);
  Tri gradient = Tri::No;
  /// Heat generator 2ψt∂_t + Y.
  std::string heat_name;
  /// Heat generator built from the potential (gradient vectors only).
  std::string grad_name;
  /// kind, psi and gradient are expectations to verify.
  bool checked = true;
};

struct ExpectedBracket {
  std::string x, y;
  std::vector<std::pair<std::string, Rational>> result;  // empty: zero
};

struct Discrepancy {
  std::string item;
  std::string paper;
  std::string engine;
};

enum class SearchKind { Heat, Flux, Laplace, Ansatz };
const char* search_kind_name(SearchKind k);

/// How the symmetries of a reduced equation are found.
struct ReducedSearch {
  SearchKind kind = SearchKind::Ansatz;
  /// Block metric (heat, flux) or metric of the Laplace form.
  Metric metric;
  /// Homothetic entries (heat, flux) or conformal candidates (Laplace).
  std::vector<DeclaredVector> vectors;
  Expr q = Expr(0);
  std::string time = "t";
  int degree = 3;
  std::vector<Expr> kernels{Expr(1)};
};

struct ReductionTarget {
  std::string by;
  std::vector<std::string> names;
  QuasiLinearPDE expected;
  ReducedSearch search;
  /// Source generators whose images survive.
  std::vector<std::string> inherited;
  /// Type II generators as the engine derives them (compared modulo w∂_w).
  std::vector<PointGenerator> type2;
  /// As stated in the paper, when it differs from `type2`.
  std::optional<std::vector<PointGenerator>> type2_paper;
  /// expected, inherited and type2 are expectations to verify.
  bool checked = true;
};

struct CaseStudy {
  std::string name;
  std::string title;
  Metric metric;
  std::vector<DeclaredVector> vectors;
  /// Generators beyond X_t, u∂_u and the solution family; not checked when
  /// `heat_checked` is false.
  std::vector<std::string> extra_heat;
  bool heat_checked = true;
  /// Nonzero brackets of the heat algebra; pairs not listed are expected to
  /// commute when `table_complete`.
  std::vector<ExpectedBracket> brackets;
  bool table_complete = true;
  std::vector<ReductionTarget> reductions;
  /// Polynomial degree for the collineation ansatz over the full metric.
  int collineation_degree = 2;
  std::vector<Discrepancy> discrepancies;
};

std::vector<std::string> case_names();
/// Throws std::invalid_argument for unknown names. `K` is used by the
/// constant curvature case only.
CaseStudy get_case(const std::string& name, const Rational& K = Rational(1));

std::vector<HomotheticEntry> homothetic_entries(const Metric& m,
                                                const std::vector<DeclaredVector>& vs);
SymmetryAlgebra heat_algebra(const CaseStudy& c);
SymmetryAlgebra run_search(const ReducedSearch& s, const ReducedPDE& r);

}  // namespace symred

#endif  // SYMRED_CATALOG_HPP
