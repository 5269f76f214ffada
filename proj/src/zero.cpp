#include "symred/zero.hpp"

namespace symred {

Expr zero_normal_form(const Expr& e) {
  NormalizeOptions o;
  o.expand_logs = true;
  o.trig_to_sin = true;
  Expr cur = normalize(e, o);
  for (int pass = 0; pass < 2 && !cur.is_zero(); ++pass) {
    const Expr cleared = clear_denominators(cur);
    const Expr next = normalize(cleared, o);
    if (next == cur) break;
    cur = next;
  }
  return cur;
}

ZeroResult is_zero_expr(const Expr& e, const SampleConfig& cfg) {
  ZeroResult r;
  if (e.is_zero() || zero_normal_form(e).is_zero()) {
    r.verdict = ZeroVerdict::Zero;
    return r;
  }
  const ResidualReport rep = max_abs_residual({e}, cfg);
  r.max_residual = rep.max_scaled;
  r.witness = rep.worst;
  if (rep.max_scaled > cfg.nonzero_tol) {
    r.verdict = ZeroVerdict::NonZero;
  } else {
    r.verdict = ZeroVerdict::Unknown;
    r.numerically_zero = rep.max_scaled <= cfg.tol;
  }
  return r;
}

const char* verdict_name(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero: return "Zero";
    case ZeroVerdict::NonZero: return "NonZero";
    case ZeroVerdict::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace symred
