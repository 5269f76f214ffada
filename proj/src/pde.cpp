#include "symred/pde.hpp"

#include <stdexcept>

#include "symred/zero.hpp"

namespace symred {

std::vector<std::size_t> QuasiLinearPDE::active() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (const auto& e : A[i])
      if (!e.is_zero()) {
        out.push_back(i);
        break;
      }
  return out;
}

void QuasiLinearPDE::validate() const {
  const std::size_t n = coords.size();
  if (A.size() != n || B.size() != n)
    throw std::invalid_argument("pde: coefficient dimensions do not match");
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("pde: A is not square");
  if (!is_symmetric(A)) throw std::invalid_argument("pde: A is not symmetric");
  if (active().empty()) throw std::invalid_argument("pde: A vanishes");
  if (evolution && *evolution >= n)
    throw std::invalid_argument("pde: evolution index out of range");
}

namespace {

std::vector<Expr> flatten(const QuasiLinearPDE& p) {
  std::vector<Expr> out;
  for (const auto& row : p.A) out.insert(out.end(), row.begin(), row.end());
  out.insert(out.end(), p.B.begin(), p.B.end());
  out.push_back(p.f);
  return out;
}

}  // namespace

bool same_pde_up_to_scale(const QuasiLinearPDE& a, const QuasiLinearPDE& b) {
  if (a.coords != b.coords || a.evolution != b.evolution) return false;
  const auto fa = flatten(a);
  auto fb = flatten(b);
  if (a.dep != b.dep) {
    for (auto& e : fb) e = substitute(e, {{b.dep, sym(a.dep)}});
  }
  std::size_t k = 0;
  while (k < fa.size() && fa[k].is_zero()) ++k;
  if (k == fa.size()) {
    for (const auto& e : fb)
      if (!zero_normal_form(e).is_zero()) return false;
    return true;
  }
  if (fb[k].is_zero()) return false;
  const Expr ratio = normalize(fb[k] / fa[k]);
  for (const auto& c : a.coords)
    if (!zero_normal_form(differentiate(ratio, c)).is_zero()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (!zero_normal_form(fb[i] - ratio * fa[i]).is_zero()) return false;
  return true;
}

std::string describe(const QuasiLinearPDE& p) {
  auto d1 = [&](std::size_t i) { return p.dep + "_" + p.coords[i]; };
  auto d2 = [&](std::size_t i, std::size_t j) {
    const bool short_names = p.coords[i].size() == 1 && p.coords[j].size() == 1;
    return p.dep + "_" + p.coords[i] + (short_names ? "" : "_") + p.coords[j];
  };
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = i; j < p.dim(); ++j) {
      if (p.A[i][j].is_zero()) continue;
      const Expr c = i == j ? p.A[i][j] : Expr(2) * p.A[i][j];
      parts.push_back(c * sym(d2(i, j)));
    }
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (!p.B[i].is_zero()) parts.push_back(-p.B[i] * sym(d1(i)));
  parts.push_back(-p.f);
  return print_expr(sum(parts)) + " = 0";
}

}  // namespace symred
