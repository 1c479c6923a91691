#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polymap/poly.hpp"

namespace polymap {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact. `ctx` names the ring for the empty matrix.
inline Poly determinant(PolyMatrix m, const VarContext& ctx) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant: matrix is not square");
  if (n == 0) return Poly::constant(ctx, 1);
  bool negate = false;
  Poly previous = Poly::constant(ctx, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return Poly(ctx);
      std::swap(m[k], m[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divide_exact(num, previous);
        if (!q) throw std::logic_error("determinant: inexact Bareiss division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Poly(ctx);
    }
    previous = m[k][k];
  }
  Poly det = std::move(m[n - 1][n - 1]);
  return negate ? -det : det;
}

/// Sylvester matrix of f and g as univariate polynomials in `var`, with
/// both degrees at least 1 in `var`.
inline PolyMatrix sylvester_matrix(const Poly& f, const Poly& g, std::size_t var) {
  auto fc = coefficients_in(f, var);
  auto gc = coefficients_in(g, var);
  const std::size_t m = fc.size() - 1, n = gc.size() - 1, size = m + n;
  const VarContext& ctx = f.context();
  PolyMatrix s(size, std::vector<Poly>(size, Poly(ctx)));
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t k = 0; k <= m; ++k) s[row][row + k] = fc[m - k];
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t k = 0; k <= n; ++k) s[n + row][row + k] = gc[n - k];
  return s;
}

/// Resultant with respect to `var`. Conventions for degenerate inputs:
/// Res(f, c) = c^deg(f) and Res(c, g) = c^deg(g) for c free of var (both
/// free: 1); a zero argument against a nonzero one gives 0.
inline Poly resultant(const Poly& f, const Poly& g, std::size_t var) {
  require_same_context(f.context(), g.context(), "resultant");
  const VarContext& ctx = f.context();
  if (var >= ctx.size()) throw std::out_of_range("resultant: variable index out of range");
  if (f.is_zero() && g.is_zero()) throw std::domain_error("resultant: both arguments are zero");
  if (f.is_zero() || g.is_zero()) return Poly(ctx);
  int df = f.degree_in(var), dg = g.degree_in(var);
  if (df == 0 && dg == 0) return Poly::constant(ctx, 1);
  if (dg == 0) return pow(g, static_cast<unsigned>(df));
  if (df == 0) return pow(f, static_cast<unsigned>(dg));
  return determinant(sylvester_matrix(f, g, var), ctx);
}

inline Poly resultant(const Poly& f, const Poly& g, std::string_view var) {
  auto idx = f.context().index_of(var);
  if (!idx) throw std::invalid_argument("resultant: unknown variable '" + std::string(var) + "'");
  return resultant(f, g, *idx);
}

/// Dense univariate polynomials over Q; entry k is the coefficient of x^k,
/// no trailing zeros (the zero polynomial is empty).
namespace univariate {

using Dense = std::vector<Rational>;

inline void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Dense from_poly(const Poly& f, std::size_t var) {
  Dense out;
  for (const auto& t : f.terms()) {
    if (t.monomial.degree() != t.monomial[var])
      throw std::invalid_argument("univariate::from_poly: polynomial involves other variables");
    auto e = static_cast<std::size_t>(t.monomial[var]);
    if (out.size() <= e) out.resize(e + 1);
    out[e] += t.coeff;
  }
  trim(out);
  return out;
}

inline Poly to_poly(const Dense& p, const VarContext& ctx, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != 0)
      terms.push_back({Monomial::variable(ctx.size(), var, static_cast<int>(k)), p[k]});
  return Poly::from_terms(ctx, std::move(terms));
}

inline Dense derivative(const Dense& p) {
  Dense d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

/// Quotient and remainder; b nonzero.
inline std::pair<Dense, Dense> divmod(Dense a, const Dense& b) {
  if (b.empty()) throw std::domain_error("univariate division by zero");
  Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Dense monic(Dense p) {
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

inline Dense gcd(Dense a, Dense b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// p / gcd(p, p'), monic.
inline Dense squarefree_part(const Dense& p) {
  if (p.size() <= 1) return monic(p);
  return monic(divmod(p, gcd(p, derivative(p))).first);
}

}  // namespace univariate

}  // namespace polymap
