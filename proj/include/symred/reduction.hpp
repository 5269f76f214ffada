#ifndef SYMRED_REDUCTION_HPP
#define SYMRED_REDUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "symred/symmetry.hpp"

namespace symred {

/// New coordinates I^a(x) and u = μ(x) w for a reduction by one generator.
struct InvariantChart {
  std::vector<std::string> old_coords;
  std::string old_dep = "u";
  /// Coordinate removed by the reduction; it parametrizes the orbits.
  std::string eliminated;
  std::vector<std::string> new_coords;
  std::vector<Expr> invariants;  // in old coordinates
  std::string new_dep = "w";
  Expr mu = Expr(1);
  /// Old coordinates (except `eliminated`) in new ones and `eliminated`.
  Binding inverse;

  std::string describe() const;
};

class UnsupportedGenerator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zeroth order invariants by integrating the characteristic system along
/// the eliminated coordinate. Handles systems that are linear and
/// triangular in the remaining coordinates and in u (translations,
/// scalings, Gaussian weights). `names` renames the invariants in chart
/// order; by default coordinates the generator does not move keep their name
/// and the others become I1, I2, ...
InvariantChart invariants_for(const PointGenerator& g,
                              const std::vector<std::string>& names = {},
                              const std::string& new_dep = "w");

struct InvariantCheck {
  bool ok = false;
  std::vector<Expr> residuals;
};

/// X(I^a) = 0 for all a and X(u/μ) = 0.
InvariantCheck verify_invariants(const PointGenerator& g,
                                 const InvariantChart& chart,
                                 const SampleConfig& cfg = {});

struct ReducedPDE {
  QuasiLinearPDE pde;
  InvariantChart chart;
  std::string generator;
  /// The source equation, rewritten, equals `divisor` times the reduced one.
  Expr divisor;
  std::vector<std::string> caveats;
};

/// Chain-rule substitution u = μ w(I), division by μ·g(eliminated) and
/// removal of the eliminated coordinate. Throws std::runtime_error if a
/// coefficient still depends on it.
ReducedPDE reduce_pde(const QuasiLinearPDE& p, const PointGenerator& g,
                      const InvariantChart& chart, const SampleConfig& cfg = {});

struct LaplaceForm {
  Metric metric;  // ḡ = N² g with g^{ij} read off A
  Expr N2;
};

/// Seeks N² with A^ij u_ij - B^i u_i = N² Δ_ḡ u. Requires no evolution term,
/// f = 0 and dimension > 2; absent when ln N² is not integrable in the
/// supported classes or the result fails exact verification.
std::optional<LaplaceForm> laplace_form_detect(const QuasiLinearPDE& p,
                                               std::string* diagnostic = nullptr);

}  // namespace symred

#endif  // SYMRED_REDUCTION_HPP
