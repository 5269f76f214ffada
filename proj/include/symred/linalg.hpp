#ifndef SYMRED_LINALG_HPP
#define SYMRED_LINALG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "symred/expr.hpp"

namespace symred {

// --- exact linear systems over Q --------------------------------------------

/// sum_k coeffs[k] * x_k + constant = 0
struct LinearEquation {
  std::map<std::size_t, Rational> coeffs;
  Rational constant;
};

struct AffineSolution {
  bool consistent = true;
  /// One solution (free variables set to 0).
  std::vector<Rational> particular;
  /// Basis of the homogeneous solution space, one vector per free variable.
  std::vector<std::vector<Rational>> nullspace;
  /// Free variable of each nullspace vector (its entry there is 1).
  std::vector<std::size_t> free_vars;
};

/// Exact reduced row echelon solve (GMP rationals internally).
AffineSolution solve_linear(std::size_t nvars,
                            const std::vector<LinearEquation>& eqs);

/// Turns "expr = 0 identically in every other symbol" into linear equations
/// for the listed unknown constants: each expression is brought to the zero
/// normal form and its coefficients are matched per remaining monomial.
/// Throws NotPolynomialError if an unknown enters nonlinearly.
std::vector<LinearEquation> linearize(const std::vector<Expr>& exprs,
                                      const std::vector<std::string>& unknowns);

// --- symbolic matrices --------------------------------------------------------

using Matrix = std::vector<std::vector<Expr>>;

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
Expr determinant(const Matrix& m);
/// Inverse by cofactors, block by block over the connected components of
/// the sparsity pattern. Throws SingularMatrixError for a zero determinant.
Matrix inverse(const Matrix& m);
bool is_symmetric(const Matrix& m);

}  // namespace symred

#endif  // SYMRED_LINALG_HPP
