#ifndef SYMRED_PIPELINE_HPP
#define SYMRED_PIPELINE_HPP

// End-to-end runs of a case study with every expectation turned into a check.

#include <optional>
#include <string>
#include <vector>

#include "symred/catalog.hpp"

namespace symred {

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VectorReport {
  DeclaredVector declared;
  CollineationClass engine;
  bool ok = false;
};

struct ReductionRun {
  ReductionTarget target;
  ReductionReport report;
};

struct CaseReport {
  CaseStudy study;
  std::vector<VectorReport> vectors;
  SymmetryAlgebra heat;
  std::vector<ReductionRun> reductions;
  std::vector<Check> checks;
  SampleConfig cfg;
  double max_residual = 0.0;
  /// Collineation ansatz over the full metric (when requested).
  std::optional<std::vector<FoundVector>> found;
  int found_degree = 0;

  bool ok() const;
};

struct RunOptions {
  bool vectors = true;
  bool heat = true;
  /// Empty runs every reduction of the case; otherwise only the named one.
  std::string reduce_by;
  bool reductions = true;
  /// Runs the HV ansatz at this degree; 0 skips it, -1 uses the case default.
  int ansatz_degree = 0;
};

/// KVs plus at most one proper HV with polynomial components of total
/// degree <= `degree`.
std::vector<FoundVector> search_collineations(const Metric& m, int degree);

CaseReport run_case(const CaseStudy& c, const SampleConfig& cfg = {},
                    const RunOptions& opts = {});

/// Every generator in `a` lies in span(b ∪ {w∂_w}) and vice versa, with
/// equal counts.
bool same_lines_mod_scaling(const std::vector<PointGenerator>& a,
                            const std::vector<PointGenerator>& b);

}  // namespace symred

#endif  // SYMRED_PIPELINE_HPP
