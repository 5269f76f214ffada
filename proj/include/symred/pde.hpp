#ifndef SYMRED_PDE_HPP
#define SYMRED_PDE_HPP

#include <optional>
#include <string>
#include <vector>

#include "symred/linalg.hpp"
#include "symred/numcheck.hpp"

namespace symred {

/// A^ij u_ij - B^i u_i - f(x, u) = 0 over `coords`.
///
/// A heat-type equation carries its evolution coordinate as an ordinary
/// coordinate with a zero A row and B = 1 in that slot, so the u_t term is
/// the B-term of that coordinate.
struct QuasiLinearPDE {
  std::vector<std::string> coords;
  Box box;
  Matrix A;
  std::vector<Expr> B;
  Expr f;
  std::string dep = "u";
  /// Index of the evolution coordinate, if any.
  std::optional<std::size_t> evolution;

  std::size_t dim() const { return coords.size(); }
  bool has_ut() const { return evolution.has_value(); }
  /// Indices whose A row is not identically zero.
  std::vector<std::size_t> active() const;
  /// Throws std::invalid_argument on inconsistent dimensions or asymmetry.
  void validate() const;
};

/// Equality of coefficient records up to one overall nonzero constant.
bool same_pde_up_to_scale(const QuasiLinearPDE& a, const QuasiLinearPDE& b);

std::string describe(const QuasiLinearPDE& p);

}  // namespace symred

#endif  // SYMRED_PDE_HPP
