#include "symred/linalg.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "symred/zero.hpp"

namespace symred {
namespace {

mpq_class to_mpq(const Rational& q) {
  mpq_class r(static_cast<long>(q.num()), static_cast<unsigned long>(q.den()));
  r.canonicalize();
  return r;
}

Rational to_rational(const mpq_class& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
    throw std::overflow_error("symred: solution coefficient exceeds 64 bits");
  return Rational(q.get_num().get_si(), q.get_den().get_si());
}

using Row = std::map<std::size_t, mpq_class>;

// Index used for the constant column; sorts after every variable.
constexpr std::size_t kConst = static_cast<std::size_t>(-1);

void axpy(Row& target, const mpq_class& factor, const Row& src) {
  for (const auto& [k, v] : src) {
    auto it = target.find(k);
    if (it == target.end()) {
      target.emplace(k, -factor * v);
    } else {
      it->second -= factor * v;
      if (it->second == 0) target.erase(it);
    }
  }
}

}  // namespace

AffineSolution solve_linear(std::size_t nvars,
                            const std::vector<LinearEquation>& eqs) {
  std::map<std::size_t, Row> pivots;  // pivot column -> reduced row
  AffineSolution sol;
  for (const auto& eq : eqs) {
    Row r;
    for (const auto& [k, v] : eq.coeffs)
      if (!v.is_zero()) r.emplace(k, to_mpq(v));
    if (!eq.constant.is_zero()) r.emplace(kConst, to_mpq(eq.constant));
    // Reduce against existing pivots.
    for (auto it = r.begin(); it != r.end() && it->first != kConst;) {
      auto p = pivots.find(it->first);
      if (p == pivots.end()) {
        ++it;
        continue;
      }
      const mpq_class f = it->second;
      const std::size_t col = it->first;
      axpy(r, f, p->second);
      it = r.upper_bound(col);
    }
    if (r.empty()) continue;
    if (r.begin()->first == kConst) {
      sol.consistent = false;
      continue;
    }
    const std::size_t col = r.begin()->first;
    const mpq_class lead = r.begin()->second;
    for (auto& [k, v] : r) v /= lead;
    for (auto& [pc, prow] : pivots) {
      auto it = prow.find(col);
      if (it != prow.end()) {
        const mpq_class f = it->second;
        axpy(prow, f, r);
      }
    }
    pivots.emplace(col, std::move(r));
  }
  sol.particular.assign(nvars, Rational(0));
  for (const auto& [pc, row] : pivots) {
    auto it = row.find(kConst);
    if (it != row.end()) sol.particular[pc] = to_rational(-it->second);
  }
  for (std::size_t f = 0; f < nvars; ++f) {
    if (pivots.count(f)) continue;
    std::vector<Rational> v(nvars, Rational(0));
    v[f] = Rational(1);
    for (const auto& [pc, row] : pivots) {
      auto it = row.find(f);
      if (it != row.end()) v[pc] = to_rational(-it->second);
    }
    sol.nullspace.push_back(std::move(v));
    sol.free_vars.push_back(f);
  }
  return sol;
}

std::vector<LinearEquation> linearize(const std::vector<Expr>& exprs,
                                      const std::vector<std::string>& unknowns) {
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < unknowns.size(); ++i) index[unknowns[i]] = i;
  std::vector<LinearEquation> out;
  for (const auto& e : exprs) {
    if (e.is_zero()) continue;
    const Expr z = zero_normal_form(e);
    std::map<Expr, LinearEquation, ExprLess> groups;
    for (const auto& t : to_terms(z)) {
      Monomial rest;
      std::size_t var = kConst;
      for (const auto& f : t.mono) {
        if (f.base.is_symbol()) {
          auto it = index.find(f.base.name());
          if (it != index.end()) {
            if (var != kConst || !f.exp.is_one())
              throw NotPolynomialError("unknown " + f.base.name() +
                                       " enters nonlinearly");
            var = it->second;
            continue;
          }
        }
        for (const auto& u : unknowns)
          if (f.base.depends_on(u))
            throw NotPolynomialError("unknown " + u + " inside " +
                                     print_expr(f.base));
        rest.push_back(f);
      }
      LinearEquation& eq = groups[from_terms({Term{Rational(1), rest}})];
      if (var == kConst) eq.constant += t.coeff;
      else eq.coeffs[var] += t.coeff;
    }
    for (auto& [key, eq] : groups) out.push_back(std::move(eq));
  }
  return out;
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Expr>(n, Expr(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Expr(1);
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix r(n, std::vector<Expr>(m, Expr(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Expr> parts;
      for (std::size_t l = 0; l < k; ++l)
        if (!a[i][l].is_zero() && !b[l][j].is_zero())
          parts.push_back(a[i][l] * b[l][j]);
      r[i][j] = sum(parts);
    }
  return r;
}

namespace {

Expr det_rec(const Matrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (row == m.size()) return Expr(1);
  std::vector<Expr> parts;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Expr& a = m[row][cols[c]];
    if (a.is_zero()) continue;
    const std::size_t col = cols[c];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(c));
    const Expr minor = det_rec(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(c), col);
    if (minor.is_zero()) continue;
    parts.push_back(c % 2 ? -(a * minor) : a * minor);
  }
  return sum(parts);
}

// Connected components of the symmetric sparsity pattern.
std::vector<std::vector<std::size_t>> blocks_of(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!m[i][j].is_zero()) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, g] : groups) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

Matrix sub(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix r(idx.size(), std::vector<Expr>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r[i][j] = m[idx[i]][idx[j]];
  return r;
}

Matrix inverse_block(const Matrix& m) {
  const std::size_t n = m.size();
  const Expr det = determinant(m);
  if (det.is_zero() || zero_normal_form(det).is_zero())
    throw SingularMatrixError("symred: matrix is singular");
  if (n == 1) return {{Expr(1) / m[0][0]}};
  Matrix inv(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_ji goes to inv[i][j]
      Matrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Expr> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      Expr c = determinant(minor);
      if ((i + j) % 2) c = -c;
      inv[i][j] = c / det;
    }
  return inv;
}

}  // namespace

Expr determinant(const Matrix& m) {
  if (m.empty()) return Expr(1);
  std::vector<std::size_t> cols(m.size());
  std::iota(cols.begin(), cols.end(), 0);
  return det_rec(m, cols, 0);
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<Expr>(n, Expr(0)));
  for (const auto& b : blocks_of(m)) {
    const Matrix bi = inverse_block(sub(m, b));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) inv[b[i]][b[j]] = bi[i][j];
  }
  return inv;
}

bool is_symmetric(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

}  // namespace symred
