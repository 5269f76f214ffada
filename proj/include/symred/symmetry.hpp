#ifndef SYMRED_SYMMETRY_HPP
#define SYMRED_SYMMETRY_HPP

// Lie point symmetries of linear second order equations
//   A^ij u_ij - B^i u_i - f(x, u) = 0
// with generators X = ξ^i(x) ∂_i + (a(x) u + b(x)) ∂_u.

#include <optional>
#include <string>
#include <vector>

#include "symred/geometry.hpp"

namespace symred {

struct PointGenerator {
  std::string name;
  std::vector<std::string> coords;
  std::vector<Expr> xi;
  Expr a;
  Expr b;
  std::string dep = "u";
  /// b(x) ∂_u with b an arbitrary solution; carried symbolically.
  bool marker = false;

  bool is_zero() const;
};

/// "t*d_x - 1/2*x*u*d_u"
std::string print_generator(const PointGenerator& g);

PointGenerator make_generator(std::string name, std::vector<std::string> coords,
                              std::vector<Expr> xi, Expr a = Expr(0),
                              Expr b = Expr(0), std::string dep = "u");
PointGenerator scaling_generator(const std::vector<std::string>& coords,
                                 const std::string& dep = "u");
PointGenerator marker_generator(const std::vector<std::string>& coords,
                                const std::string& dep = "u");

PointGenerator operator+(const PointGenerator& x, const PointGenerator& y);
PointGenerator operator*(const Expr& c, const PointGenerator& g);

/// Structural equality of all components (names ignored).
bool same_generator(const PointGenerator& x, const PointGenerator& y);

struct Bracket {
  std::size_t i = 0, j = 0;
  /// [g_i, g_j] = sum_k coeffs[k] g_k when `closes`.
  std::vector<Rational> coeffs;
  bool closes = false;
};

struct SymmetryAlgebra {
  std::vector<PointGenerator> gens;
  std::vector<Bracket> table;
  /// Pairs whose bracket leaves the span of `gens`.
  std::vector<std::pair<std::size_t, std::size_t>> exceptions;
  std::vector<std::string> notes;

  std::optional<std::size_t> find(const std::string& name) const;
  const PointGenerator& at(const std::string& name) const;
  /// Generators without the marker.
  std::vector<PointGenerator> regular() const;
};

// --- determining equations ---------------------------------------------------

/// Residuals of the symmetry conditions: the zeroth order condition, the
/// first order conditions (one per coordinate) and the second order ones
/// (i <= j), with λ - a = tr(L_ξ A · A⁻¹)/m over the m active coordinates.
/// Throws std::invalid_argument when A vanishes identically.
std::vector<Expr> symmetry_residuals(const QuasiLinearPDE& p,
                                     const PointGenerator& g);

struct SymmetryCheck {
  Tri verdict = Tri::Unknown;
  /// Every residual was literally zero after the symbolic pass.
  bool exact = false;
  double max_residual = 0.0;
  std::vector<Expr> open_residuals;
  std::string note;
};

SymmetryCheck is_symmetry(const QuasiLinearPDE& p, const PointGenerator& g,
                          const SampleConfig& cfg = {});

/// A^ij F_ij - B^i F_i
Expr apply_operator(const QuasiLinearPDE& p, const Expr& F);

PointGenerator commutator(const PointGenerator& x, const PointGenerator& y);

/// Coefficients c with target = sum c_k basis_k, if any (exact solve).
std::optional<std::vector<Rational>> span_coefficients(
    const PointGenerator& target, const std::vector<PointGenerator>& basis);

/// Fills the structure constants of every pair of non-marker generators.
void compute_structure(SymmetryAlgebra& alg);

// --- factories ---------------------------------------------------------------

struct HomotheticEntry {
  std::string name;
  VectorField v;
  CollineationClass cls;
  std::optional<Expr> S;
  /// Name of the generator built from the potential.
  std::string grad_name;
};

/// X_t, X_u, the marker, 2ψt∂_t + Y for every entry, and for gradient entries
/// ψt²∂_t + tS^{,i}∂_i - (S/2 + nψt/2) u∂_u. Throws std::invalid_argument for
/// a gradient entry without potential.
SymmetryAlgebra heat_symmetries_from_homothetic(
    const Metric& m, const std::vector<HomotheticEntry>& entries,
    const std::string& time = "t", const std::string& dep = "u");

// Flux constraint for Δu - u_t = q(t, x, u).

/// Shape a: (2c2ψt + c1)∂_t + c2 Y + a(t) u ∂_u.
struct FluxShapeA {
  Expr a;
  Expr c1, c2;
  Expr psi;
  std::vector<Expr> Y;
};

/// Shape b: 2ψ(∫T)∂_t + T S^{,i}∂_i + (-T'S/2 + F) u ∂_u.
struct FluxShapeB {
  Expr T, F;
  Expr psi;
  Expr S;
  std::vector<Expr> gradS;
};

/// Coefficient of u in the constraint (the b-part is the solution family).
/// `dimension` multiplies the ψT' term: the space dimension gives the
/// condition that is consistent with the q = 0 generators; 1 gives the
/// constraint exactly as it is usually printed.
Expr flux_constraint_residual(const Metric& m, const Expr& q,
                              const FluxShapeA& c,
                              const std::string& time = "t",
                              const std::string& dep = "u");
Expr flux_constraint_residual(const Metric& m, const Expr& q,
                              const FluxShapeB& c, Rational dimension,
                              const std::string& time = "t",
                              const std::string& dep = "u");

struct FluxSolution {
  /// a(t) in shape a with free constants c1, c2, a0.
  Expr a;
  /// T(t), F(t) in shape b with free constants T0, T1 (and F0).
  Expr T, F;
  std::vector<std::string> params_a, params_b;
  std::string basis;
};

/// Solves both constraints for a HV/KV Y with factor ψ and, for shape b, a
/// gradient potential S, over Laurent polynomials in t with ln t.
FluxSolution solve_flux_constraint(const Metric& m, const Expr& q,
                                   const HomotheticEntry& entry,
                                   Rational dimension,
                                   const std::string& time = "t",
                                   const std::string& dep = "u");

/// Symmetry generators of Δu - u_t = q built from the solved constraints,
/// one per free constant, plus the marker.
SymmetryAlgebra flux_symmetries(const Metric& m, const Expr& q,
                                const std::vector<HomotheticEntry>& entries,
                                const std::string& time = "t",
                                const std::string& dep = "u");

struct ConformalEntry {
  std::string name;
  VectorField v;
  Expr psi;
};

/// ξ + ((2-n)/2 ψ) u∂_u for every entry with Δψ = 0, plus u∂_u and the
/// marker. Excluded entries are listed in `notes`.
SymmetryAlgebra laplace_symmetries_from_ckv(
    const Metric& m, const std::vector<ConformalEntry>& ckvs,
    const std::string& dep = "u");

// --- finite-basis ansatz --------------------------------------------------------

/// Basis functions per component: xi[i] for ξ^i, a for a(x). b is left out:
/// the inhomogeneous part is the arbitrary-solution family.
struct AnsatzBasis {
  std::vector<std::vector<Expr>> xi;
  std::vector<Expr> a;
  std::string description;
};

/// Monomials in `coords` of total degree <= degree, times each kernel.
std::vector<Expr> monomial_basis(const std::vector<std::string>& coords,
                                 int degree,
                                 const std::vector<Expr>& kernels = {Expr(1)});

AnsatzBasis uniform_basis(const std::vector<std::string>& coords, int degree,
                          const std::vector<Expr>& kernels = {Expr(1)});

/// Solution space of the determining equations inside the basis, each
/// generator re-verified; the marker is appended.
SymmetryAlgebra ansatz_solve_determining(const QuasiLinearPDE& p,
                                         const AnsatzBasis& basis,
                                         const SampleConfig& cfg = {});

struct FoundVector {
  VectorField v;
  Expr psi;
  CollineationKind kind = CollineationKind::KV;
};

/// Solves L_ξ g = 2ψ g over the basis. KV: ψ = 0; HV: ψ an unknown constant
/// (at most one returned vector has ψ = 1, the rest are KVs); CKV: ψ from the
/// trace, every solution returned with its factor.
std::vector<FoundVector> ansatz_solve_collineation(
    const Metric& m, CollineationKind kind,
    const std::vector<std::vector<Expr>>& basis);

}  // namespace symred

#endif  // SYMRED_SYMMETRY_HPP
