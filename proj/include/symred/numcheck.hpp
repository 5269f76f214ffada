#ifndef SYMRED_NUMCHECK_HPP
#define SYMRED_NUMCHECK_HPP

// Numerical oracle: seeded random-point evaluation of symbolic residuals and
// finite-difference checks. Sampling is counter-based, so a report depends
// only on (seed, expressions, config), never on evaluation order.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/expr.hpp"

namespace symred {

struct Interval {
  double lo = 0.5;
  double hi = 2.0;
};

using Box = std::map<std::string, Interval, std::less<>>;

struct SampleConfig {
  std::uint64_t seed = 20240601;
  int samples = 100;
  Box box;
  /// Symbols missing from the box are sampled here (positive by design).
  Interval fallback{0.5, 2.0};
  /// "Should be zero" threshold.
  double tol = 1e-9;
  /// NonZero promotion threshold for the zero test.
  double nonzero_tol = 1e-3;
  /// Resamples per point when evaluation hits a pole or a non-real value.
  int retries = 20;
};

class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform value in [0, 1) from a counter-based generator.
double counter_uniform(std::uint64_t seed, std::uint64_t key,
                       std::uint64_t index, std::uint64_t lane);

/// Point in the interior of the box for every listed symbol.
NumericBinding sample_point(const std::vector<std::string>& symbols,
                            const SampleConfig& cfg, std::uint64_t key,
                            std::uint64_t index);

struct ResidualReport {
  double max_abs = 0.0;
  /// max |value| / max(1, sum of |term values|), the conditioning-aware size.
  double max_scaled = 0.0;
  NumericBinding worst;
  int points = 0;
};

/// Max |e| over seeded samples, across all expressions. Throws PoleError if a
/// point cannot be evaluated within the retry budget.
ResidualReport max_abs_residual(const std::vector<Expr>& exprs,
                                const SampleConfig& cfg);

/// Max relative error between differentiate(e, s) and central differences
/// with step 1e-5 * max(1, |s|).
double fd_derivative_check(const Expr& e, const std::string& s,
                           const SampleConfig& cfg);

}  // namespace symred

#endif  // SYMRED_NUMCHECK_HPP
