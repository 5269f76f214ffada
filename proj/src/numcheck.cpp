#include "symred/numcheck.hpp"

#include <algorithm>
#include <cmath>

namespace symred {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Interval interval_for(const SampleConfig& cfg, const std::string& s) {
  auto it = cfg.box.find(s);
  return it == cfg.box.end() ? cfg.fallback : it->second;
}

std::vector<std::string> symbols_of(const std::vector<Expr>& exprs) {
  std::set<std::string> all;
  for (const auto& e : exprs) {
    auto s = free_symbols(e);
    all.insert(s.begin(), s.end());
  }
  return {all.begin(), all.end()};
}

std::uint64_t key_of(const std::vector<Expr>& exprs) {
  std::uint64_t k = 0x5a17;
  for (const auto& e : exprs) k = splitmix64(k ^ e.hash());
  return k;
}

// Top-level terms, used for the conditioning scale.
std::vector<Expr> term_parts(const Expr& e) {
  std::vector<Expr> out;
  for (auto& t : to_terms(e)) out.push_back(from_terms({t}));
  return out;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t key,
                       std::uint64_t index, std::uint64_t lane) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ key);
  x = splitmix64(x ^ (index * 0x100000001b3ULL));
  x = splitmix64(x ^ (lane + 0x632be59bd9b4e019ULL));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

NumericBinding sample_point(const std::vector<std::string>& symbols,
                            const SampleConfig& cfg, std::uint64_t key,
                            std::uint64_t index) {
  NumericBinding b;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const Interval iv = interval_for(cfg, symbols[i]);
    // Lane by name, so adding a symbol does not move the others.
    const std::uint64_t lane = std::hash<std::string>{}(symbols[i]);
    const double u = counter_uniform(cfg.seed, key, index, lane);
    b[symbols[i]] = iv.lo + (iv.hi - iv.lo) * (0.05 + 0.9 * u);
  }
  return b;
}

ResidualReport max_abs_residual(const std::vector<Expr>& exprs,
                                const SampleConfig& cfg) {
  ResidualReport rep;
  std::vector<const Expr*> live;
  for (const auto& e : exprs)
    if (!e.is_zero()) live.push_back(&e);
  if (live.empty()) return rep;
  const auto symbols = symbols_of(exprs);
  const std::uint64_t key = key_of(exprs);
  std::vector<std::vector<Expr>> parts;
  for (const auto* e : live) parts.push_back(term_parts(*e));
  std::uint64_t counter = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt <= cfg.retries && !ok; ++attempt) {
      const NumericBinding b = sample_point(symbols, cfg, key, counter++);
      double worst_abs = 0, worst_scaled = 0;
      ok = true;
      for (std::size_t k = 0; k < live.size() && ok; ++k) {
        double v = 0, mag = 0;
        for (const auto& p : parts[k]) {
          const double pv = evaluate(p, b);
          v += pv;
          mag += std::abs(pv);
        }
        if (!std::isfinite(v) || !std::isfinite(mag)) {
          ok = false;
          break;
        }
        worst_abs = std::max(worst_abs, std::abs(v));
        worst_scaled = std::max(worst_scaled, std::abs(v) / std::max(1.0, mag));
      }
      if (!ok) continue;
      ++rep.points;
      if (rep.worst.empty() || worst_abs > rep.max_abs) rep.worst = b;
      rep.max_abs = std::max(rep.max_abs, worst_abs);
      rep.max_scaled = std::max(rep.max_scaled, worst_scaled);
    }
    if (!ok)
      throw PoleError("symred::max_abs_residual: no finite sample within " +
                      std::to_string(cfg.retries) + " retries");
  }
  return rep;
}

double fd_derivative_check(const Expr& e, const std::string& s,
                           const SampleConfig& cfg) {
  const Expr d = differentiate(e, s);
  auto symbols = symbols_of({e, d, sym(s)});
  const std::uint64_t key = key_of({e, sym(s)});
  double worst = 0;
  std::uint64_t counter = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt <= cfg.retries && !ok; ++attempt) {
      NumericBinding b = sample_point(symbols, cfg, key, counter++);
      const double x = b[s];
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      auto bp = b, bm = b;
      bp[s] = x + h;
      bm[s] = x - h;
      const double fd = (evaluate(e, bp) - evaluate(e, bm)) / (2 * h);
      const double ex = evaluate(d, b);
      if (!std::isfinite(fd) || !std::isfinite(ex)) continue;
      ok = true;
      worst = std::max(worst, std::abs(fd - ex) / std::max(1.0, std::abs(ex)));
    }
    if (!ok)
      throw PoleError("symred::fd_derivative_check: no finite sample within " +
                      std::to_string(cfg.retries) + " retries");
  }
  return worst;
}

}  // namespace symred
