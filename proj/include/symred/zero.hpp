#ifndef SYMRED_ZERO_HPP
#define SYMRED_ZERO_HPP

#include "symred/expr.hpp"
#include "symred/numcheck.hpp"

namespace symred {

enum class ZeroVerdict { Zero, NonZero, Unknown };

struct ZeroResult {
  ZeroVerdict verdict = ZeroVerdict::Unknown;
  /// Largest scaled sample value (0 when decided symbolically).
  double max_residual = 0.0;
  /// All samples were below cfg.tol; only meaningful for Unknown.
  bool numerically_zero = false;
  NumericBinding witness;
};

/// Symbolic simplification used before declaring a residual nonzero:
/// logarithm expansion and sin/cos rewriting (positive branch), then
/// clearing of denominators.
Expr zero_normal_form(const Expr& e);

/// Zero if the symbolic pass yields literal 0; otherwise samples the box:
/// NonZero if a scaled sample exceeds cfg.nonzero_tol, else Unknown.
ZeroResult is_zero_expr(const Expr& e, const SampleConfig& cfg = {});

const char* verdict_name(ZeroVerdict v);

}  // namespace symred

#endif  // SYMRED_ZERO_HPP
