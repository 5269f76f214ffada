#ifndef SYMRED_GEOMETRY_HPP
#define SYMRED_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "symred/pde.hpp"
#include "symred/zero.hpp"

namespace symred {

enum class Tri { Yes, No, Unknown };
const char* tri_name(Tri t);

struct Chart {
  std::vector<std::string> coords;
  Box box;
  std::size_t dim() const { return coords.size(); }
  std::size_t index(const std::string& c) const;  // throws if absent
};

struct Metric {
  Chart chart;
  Matrix g;
  std::size_t dim() const { return chart.dim(); }
  /// Symmetry and nonzero determinant; throws std::invalid_argument.
  void validate(const SampleConfig& cfg = {}) const;
};

struct VectorField {
  std::vector<Expr> xi;
};

enum class CollineationKind { KV, HV, CKV, NotConformal };
const char* kind_name(CollineationKind k);

struct CollineationClass {
  CollineationKind kind = CollineationKind::NotConformal;
  Expr psi;
  Tri gradient = Tri::Unknown;
  /// Set when some component was only numerically zero.
  bool numeric_only = false;
  std::string diagnostic;
};

Matrix inverse_metric(const Metric& m);
/// gamma[i][j][k] = Γ^i_jk
std::vector<Matrix> christoffel(const Metric& m);
/// Γ^i = g^jk Γ^i_jk
std::vector<Expr> contracted_christoffel(const Metric& m);

/// Δu - u_t = q with coordinates (t, x^i). q may involve `dep`.
QuasiLinearPDE heat_pde(const Metric& m, const Expr& q = Expr(0),
                        const std::string& time = "t",
                        const std::string& dep = "u");
/// Δu = 0.
QuasiLinearPDE laplace_pde(const Metric& m, const std::string& dep = "u");

/// (L_v g)_ij = ξ^k g_ij,k + g_kj ξ^k_,i + g_ik ξ^k_,j
Matrix lie_derivative_metric(const VectorField& v, const Metric& m);

CollineationClass classify_collineation(const VectorField& v, const Metric& m,
                                        const SampleConfig& cfg = {});

/// ξ_i = g_ij ξ^j closed? Yes/No/Unknown.
Tri is_gradient(const VectorField& v, const Metric& m,
                const SampleConfig& cfg = {});

struct PotentialResult {
  std::optional<Expr> S;
  std::string diagnostic;
};

/// S with g^ij S_,j = ξ^i, by integrating along coordinate lines (monomial,
/// exp, ln and sin/cos antiderivatives only). Absent if ξ_i is not closed or
/// the integrand is outside the supported classes.
PotentialResult gradient_potential(const VectorField& v, const Metric& m,
                                   const SampleConfig& cfg = {});

/// Antiderivative in `x` for the supported function classes.
std::optional<Expr> integrate(const Expr& e, const std::string& x);

/// Factor for g = ḡ/N² of a vector that is conformal for ḡ = N² g with
/// factor psi_bar: ψ = ψ̄ - ξ^i ∂_i ln N.
Expr conformal_transport(const VectorField& v, const Expr& psi_bar,
                         const Expr& N, const Chart& chart);

Metric conformal_rescale_metric(const Metric& m, const Expr& N2);

/// Applies a vector field to a function: ξ^i ∂_i f.
Expr apply_vector(const std::vector<Expr>& xi,
                  const std::vector<std::string>& coords, const Expr& f);

}  // namespace symred

#endif  // SYMRED_GEOMETRY_HPP
