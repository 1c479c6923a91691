#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polymap/errors.hpp"
#include "polymap/monomial.hpp"
#include "polymap/rational.hpp"
#include "polymap/var_context.hpp"

namespace polymap {

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in descending grevlex order with no zero
/// coefficients, so two polynomials are equal exactly when their term lists
/// are. Orders used by the Gröbner engine never change this storage.
class Poly {
 public:
  Poly() = default;
  explicit Poly(VarContext ctx) : ctx_(std::move(ctx)) {}

  static Poly constant(VarContext ctx, Rational c) {
    Poly p(std::move(ctx));
    c.canonicalize();
    if (c != 0) p.terms_.push_back({Monomial(p.ctx_.size()), std::move(c)});
    return p;
  }

  static Poly variable(VarContext ctx, std::size_t index) {
    if (index >= ctx.size()) throw std::out_of_range("variable index out of range");
    Poly p(std::move(ctx));
    p.terms_.push_back({Monomial::variable(p.ctx_.size(), index), Rational(1)});
    return p;
  }

  static Poly variable(VarContext ctx, std::string_view name) {
    auto idx = ctx.index_of(name);
    if (!idx) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    return variable(std::move(ctx), *idx);
  }

  static Poly monomial(VarContext ctx, Monomial m, Rational c = 1) {
    Poly p(std::move(ctx));
    if (m.size() != p.ctx_.size()) throw std::invalid_argument("monomial arity mismatch");
    c.canonicalize();
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  /// Combines like terms and sorts; zero terms are dropped.
  static Poly from_terms(VarContext ctx, std::vector<Term> terms) {
    Poly p(std::move(ctx));
    for (auto& t : terms) {
      if (t.monomial.size() != p.ctx_.size())
        throw std::invalid_argument("monomial arity mismatch");
      t.coeff.canonicalize();
    }
    const auto ord = MonomialOrder::grevlex();
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
      return ord.greater(a.monomial, b.monomial);
    });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coeff += t.coeff;
        if (p.terms_.back().coeff == 0) p.terms_.pop_back();
      } else if (t.coeff != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const VarContext& context() const noexcept { return ctx_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || terms_.front().monomial.is_one(); }

  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
    return 0;
  }

  /// -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : terms_.front().monomial.degree(); }

  /// -1 for the zero polynomial.
  int degree_in(std::size_t var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
    return d;
  }

  bool involves(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.monomial[var] != 0; });
  }

  /// Leading term under the storage (grevlex) order. Requires nonzero.
  const Term& leading_term() const { return terms_.front(); }

  Poly operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Poly& operator+=(const Poly& b) { return *this = merge(*this, b, false); }
  Poly& operator-=(const Poly& b) { return *this = merge(*this, b, true); }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.coeff *= c;
    }
    return *this;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    require_same_context(a.ctx_, b.ctx_, "multiply");
    if (a.is_zero() || b.is_zero()) return Poly(a.ctx_);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0].monomial, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0].monomial, a.terms_[0].coeff);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.monomial * t.monomial] += s.coeff * t.coeff;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.push_back({m, std::move(c)});
    return from_terms(a.ctx_, std::move(out));
  }

  friend Poly operator*(const Poly& a, const Rational& c) {
    Poly r(a);
    r *= c;
    return r;
  }
  friend Poly operator*(const Rational& c, const Poly& a) { return a * c; }

  /// Multiplication by c * m; keeps the sort order since monomial
  /// multiplication is order-compatible.
  Poly times_term(const Monomial& m, const Rational& c) const {
    Poly r(ctx_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coeff * c});
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (!(a.ctx_ == b.ctx_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff)
        return false;
    return true;
  }

  /// Moves the polynomial into context `to`; variable i becomes
  /// `index_map[i]`. A negative entry means the variable must not occur.
  Poly remap(const VarContext& to, std::span<const int> index_map) const {
    if (index_map.size() != ctx_.size()) throw std::invalid_argument("remap: index map arity");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      std::vector<int> e(to.size(), 0);
      for (std::size_t i = 0; i < ctx_.size(); ++i) {
        if (t.monomial[i] == 0) continue;
        if (index_map[i] < 0)
          throw std::invalid_argument("remap: variable '" + ctx_.name(i) + "' has no image");
        e[static_cast<std::size_t>(index_map[i])] += t.monomial[i];
      }
      out.push_back({Monomial(std::move(e)), t.coeff});
    }
    return from_terms(to, std::move(out));
  }

  /// Same variables by name in a context that contains all of them.
  Poly embed(const VarContext& to) const {
    std::vector<int> map(ctx_.size());
    for (std::size_t i = 0; i < ctx_.size(); ++i) {
      auto j = to.index_of(ctx_.name(i));
      map[i] = j ? static_cast<int>(*j) : -1;
    }
    return remap(to, map);
  }

 private:
  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    require_same_context(a.ctx_, b.ctx_, subtract ? "subtract" : "add");
    const auto ord = MonomialOrder::grevlex();
    Poly r(a.ctx_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = ord.compare(a.terms_[i].monomial, b.terms_[j].monomial);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = -t.coeff;
        r.terms_.push_back(std::move(t));
      } else {
        Rational sum = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                                : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (sum != 0) r.terms_.push_back({a.terms_[i].monomial, std::move(sum)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  VarContext ctx_;
  std::vector<Term> terms_;
};

inline Poly pow(const Poly& base, unsigned exponent) {
  Poly result = Poly::constant(base.context(), 1);
  Poly b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent) b *= b;
  }
  return result;
}

/// Image of f under the ring map sending variable i of f's context to
/// assignment[i]. All assignment entries share one context.
inline Poly substitute(const Poly& f, std::span<const Poly> assignment) {
  const auto& ctx = f.context();
  if (assignment.size() != ctx.size())
    throw std::invalid_argument("substitute: assignment has " + std::to_string(assignment.size()) +
                                " entries for " + std::to_string(ctx.size()) + " variables");
  if (ctx.empty()) throw std::invalid_argument("substitute: target context unknown for constant");
  const VarContext& target = assignment[0].context();
  for (const auto& a : assignment) require_same_context(a.context(), target, "substitute");

  std::vector<std::vector<Poly>> powers(ctx.size());
  auto power = [&](std::size_t var, int e) -> const Poly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Poly::constant(target, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * assignment[var]);
    return cache[static_cast<std::size_t>(e)];
  };

  Poly result(target);
  for (const auto& t : f.terms()) {
    Poly term = Poly::constant(target, t.coeff);
    for (std::size_t v = 0; v < ctx.size(); ++v)
      if (t.monomial[v] != 0) term *= power(v, t.monomial[v]);
    result += term;
  }
  return result;
}

inline Poly substitute(const Poly& f, std::initializer_list<Poly> assignment) {
  return substitute(f, std::span<const Poly>(assignment.begin(), assignment.size()));
}

inline Poly derivative(const Poly& f, std::size_t var) {
  if (var >= f.context().size()) throw std::out_of_range("derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    int e = t.monomial[var];
    if (e == 0) continue;
    std::vector<int> exps(t.monomial.exponents().begin(), t.monomial.exponents().end());
    exps[var] -= 1;
    out.push_back({Monomial(std::move(exps)), t.coeff * e});
  }
  return Poly::from_terms(f.context(), std::move(out));
}

inline Poly derivative(const Poly& f, std::string_view var) {
  auto idx = f.context().index_of(var);
  if (!idx) throw std::invalid_argument("derivative: unknown variable '" + std::string(var) + "'");
  return derivative(f, *idx);
}

inline Rational evaluate(const Poly& f, std::span<const Rational> point) {
  if (point.size() != f.context().size())
    throw std::invalid_argument("evaluate: point has " + std::to_string(point.size()) +
                                " coordinates for " + std::to_string(f.context().size()) +
                                " variables");
  Rational sum = 0;
  for (const auto& t : f.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (int k = 0; k < t.monomial[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

/// Coefficients of f viewed as a univariate polynomial in `var`; entry k is
/// the coefficient of var^k (free of var).
inline std::vector<Poly> coefficients_in(const Poly& f, std::size_t var) {
  int d = f.degree_in(var);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(d, 0)) + 1);
  for (const auto& t : f.terms()) {
    std::vector<int> exps(t.monomial.exponents().begin(), t.monomial.exponents().end());
    int e = exps[var];
    exps[var] = 0;
    buckets[static_cast<std::size_t>(e)].push_back({Monomial(std::move(exps)), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(f.context(), std::move(b)));
  return out;
}

/// a / b when b divides a exactly, otherwise nullopt. b must be nonzero.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  require_same_context(a.context(), b.context(), "divide");
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
  Poly rest = a;
  std::vector<Term> quotient;
  const Term& lead = b.leading_term();
  while (!rest.is_zero()) {
    const Term& lt = rest.leading_term();
    if (!lead.monomial.divides(lt.monomial)) return std::nullopt;
    Monomial m = lt.monomial / lead.monomial;
    Rational c = lt.coeff / lead.coeff;
    rest -= b.times_term(m, c);
    quotient.push_back({std::move(m), std::move(c)});
  }
  return Poly::from_terms(a.context(), std::move(quotient));
}

inline std::string to_string(const Monomial& m, const VarContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ctx.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

/// Canonical text: descending grevlex, explicit `*` and `^`.
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = t.coeff < 0;
    Rational mag = abs(t.coeff);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += to_string(t.monomial, p.context());
    } else {
      out += mag.get_str() + '*' + to_string(t.monomial, p.context());
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace polymap
