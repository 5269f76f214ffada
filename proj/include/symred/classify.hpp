#ifndef SYMRED_CLASSIFY_HPP
#define SYMRED_CLASSIFY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/reduction.hpp"

namespace symred {

enum class Inheritance {
  Reducing,      // the reduction generator itself
  Background,    // u-scaling and the solution family
  Inherits,      // [X, Z] ∈ span{Z}
  Ambiguous,     // [X, Z] ∈ span{Z, u∂_u} only
  NotInherited,  // [X, Z] elsewhere in the algebra
  Undetermined,  // [X, Z] leaves the recorded algebra
};
const char* inheritance_name(Inheritance s);

struct InheritanceEntry {
  std::string name;
  Inheritance status = Inheritance::Undetermined;
  /// [X, Z] in the algebra basis when it closes.
  std::optional<std::vector<Rational>> bracket;
};

/// Span criterion per generator of `alg` against the reduction generator Z.
std::vector<InheritanceEntry> inheritance_map(const SymmetryAlgebra& alg,
                                              const PointGenerator& Z);

/// Image of X in the reduced chart: ξ̃^a = X(I^a), ã = a - X(ln μ). Absent
/// when a component still depends on the eliminated coordinate.
std::optional<PointGenerator> push_forward(const PointGenerator& X,
                                           const InvariantChart& chart,
                                           const SampleConfig& cfg = {});

class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InheritedImage {
  std::string source;
  PointGenerator image;
  /// The image lies in the span of the reduced search result.
  bool matched = false;
};

struct ReductionReport {
  std::string by;
  ReducedPDE reduced;
  std::vector<InheritanceEntry> inheritance;
  std::vector<InheritedImage> inherited;
  /// Type I: symmetries of the source that do not survive.
  std::vector<std::string> lost;
  /// Type II: reduced symmetries outside the inherited images and w∂_w.
  std::vector<PointGenerator> type2;
  std::vector<PointGenerator> reduced_symmetries;
  std::string basis;
  std::vector<std::string> caveats;
};

/// Throws InconsistencyError if an inherited image is not a symmetry of the
/// reduced equation.
ReductionReport classify_reduction(const QuasiLinearPDE& source,
                                   const SymmetryAlgebra& alg,
                                   const PointGenerator& Z,
                                   const ReducedPDE& reduced,
                                   const SymmetryAlgebra& reduced_syms,
                                   const SampleConfig& cfg = {});

}  // namespace symred

#endif  // SYMRED_CLASSIFY_HPP
