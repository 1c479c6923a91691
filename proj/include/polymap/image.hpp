#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "polymap/cancel.hpp"
#include "polymap/morphism.hpp"
#include "polymap/resultant.hpp"

namespace polymap {

/// V(closed) minus V(removed). A unit `removed` ideal removes nothing.
struct LocallyClosed {
  Ideal closed;
  Ideal removed;
};

/// Finite union of locally closed sets in affine space. When built by
/// constructible_image with exact = false the union is a subset of the image
/// with the same closure.
class ConstructibleSet {
 public:
  explicit ConstructibleSet(VarContext ctx, std::vector<LocallyClosed> pieces = {}, bool exact = true)
      : ctx_(std::move(ctx)), pieces_(std::move(pieces)), exact_(exact) {
    for (const auto& p : pieces_) {
      require_same_context(p.closed.context(), ctx_, "constructible set");
      require_same_context(p.removed.context(), ctx_, "constructible set");
    }
  }

  const VarContext& context() const noexcept { return ctx_; }
  std::span<const LocallyClosed> pieces() const noexcept { return pieces_; }
  bool exact() const noexcept { return exact_; }
  bool empty_syntactically() const noexcept { return pieces_.empty(); }

  bool contains(std::span<const Rational> point) const {
    auto vanishes = [&](const Ideal& i) {
      return std::all_of(i.generators().begin(), i.generators().end(),
                         [&](const Poly& g) { return evaluate(g, point) == 0; });
    };
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const LocallyClosed& p) {
      return vanishes(p.closed) && !vanishes(p.removed);
    });
  }

 private:
  VarContext ctx_;
  std::vector<LocallyClosed> pieces_;
  bool exact_;
};

/// V(A) minus V(B) is empty iff every generator of B vanishes on V(A).
inline bool is_empty_piece(const LocallyClosed& p) {
  if (p.closed.is_unit()) return true;
  for (const auto& b : p.removed.groebner())
    if (!radical_member(b, p.closed)) return false;
  return true;
}

inline ConstructibleSet prune(const ConstructibleSet& s) {
  std::vector<LocallyClosed> kept;
  for (const auto& p : s.pieces())
    if (!is_empty_piece(p)) kept.push_back(p);
  return ConstructibleSet(s.context(), std::move(kept), s.exact());
}

inline ConstructibleSet intersect(const ConstructibleSet& a, const ConstructibleSet& b) {
  require_same_context(a.context(), b.context(), "constructible intersection");
  std::vector<LocallyClosed> out;
  for (const auto& p : a.pieces())
    for (const auto& q : b.pieces()) {
      LocallyClosed r{p.closed + q.closed, p.removed * q.removed};
      if (!is_empty_piece(r)) out.push_back(std::move(r));
    }
  return ConstructibleSet(a.context(), std::move(out), a.exact() && b.exact());
}

/// Complement inside V(ambient).
inline ConstructibleSet complement(const ConstructibleSet& s, const Ideal& ambient) {
  const VarContext& ctx = s.context();
  require_same_context(ambient.context(), ctx, "constructible complement");
  Ideal everything = Ideal::unit(ctx);
  ConstructibleSet result(ctx, {LocallyClosed{ambient, everything}});
  for (const auto& p : s.pieces()) {
    // not(V(A) minus V(B)) = union_j (V(0) minus V(a_j)) union V(B)
    std::vector<LocallyClosed> parts;
    for (const auto& a : p.closed.groebner())
      parts.push_back({Ideal::zero(ctx), Ideal(ctx, {a})});
    if (!p.removed.is_unit()) parts.push_back({p.removed, everything});
    result = intersect(result, ConstructibleSet(ctx, std::move(parts)));
  }
  return ConstructibleSet(ctx, std::vector<LocallyClosed>(result.pieces().begin(), result.pieces().end()),
                          s.exact());
}

/// closure(V(A) minus V(B)) = V(intersection of A : b^∞ over generators b of B).
inline Ideal closure_of(const LocallyClosed& p) {
  if (p.removed.is_unit()) return p.closed;
  std::optional<Ideal> acc;
  for (const auto& b : p.removed.groebner()) {
    Ideal sat = saturate(p.closed, b);
    acc = acc ? intersect(*acc, sat) : sat;
  }
  return acc ? *acc : Ideal::unit(p.closed.context());
}

inline Ideal closure_of(const ConstructibleSet& s) {
  std::optional<Ideal> acc;
  for (const auto& p : s.pieces()) {
    Ideal c = closure_of(p);
    acc = acc ? intersect(*acc, c) : c;
  }
  return acc ? *acc : Ideal::unit(s.context());
}

namespace detail {

/// For zero-dimensional I, adds the squarefree part of each univariate
/// elimination polynomial; the result is the radical.
inline Ideal radical_if_finite(const Ideal& ideal) {
  if (ideal.is_unit() || dimension(ideal) != 0) return ideal;
  const auto& ctx = ideal.context();
  std::vector<Poly> extra;
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    std::vector<std::size_t> drop;
    for (std::size_t u = 0; u < ctx.size(); ++u)
      if (u != v) drop.push_back(u);
    auto gens = eliminate(ideal, drop).groebner();
    if (gens.empty()) continue;
    auto sq = univariate::squarefree_part(univariate::from_poly(gens.front(), v));
    extra.push_back(univariate::to_poly(sq, ctx, v));
  }
  return ideal.with(std::move(extra));
}

}  // namespace detail

/// Image of Φ as a finite union of locally closed sets. Each step takes the
/// elimination ideal E of the graph of Φ restricted to V(S) and the product
/// c of the leading coefficients (in the source block) of the reduced basis;
/// every point of V(E) off V(c) lifts. The remainder is handled by adding
/// c∘Φ to S, up to `depth` steps.
inline ConstructibleSet constructible_image(const Morphism& phi, int depth = 8) {
  if (depth < 1) throw std::invalid_argument("constructible_image: depth must be at least 1");
  const auto& tgt = phi.target().ambient();
  const std::size_t m = phi.source_vars(), n = phi.target_vars();
  const auto order = phi.graph_order();
  std::vector<LocallyClosed> pieces;
  Ideal s = phi.source().ideal();
  bool exact = false;
  for (int level = 0; level < depth; ++level) {
    throw_if_cancelled();
    s = detail::radical_if_finite(s);
    if (s.is_unit()) {
      exact = true;
      break;
    }
    Ideal graph = level == 0 ? phi.graph_ideal() : [&] {
      std::vector<Poly> g;
      for (const auto& p : s.groebner()) g.push_back(phi.source_to_graph(p));
      for (std::size_t i = 0; i < n; ++i)
        g.push_back(Poly::variable(phi.graph_context(), m + i) - phi.source_to_graph(phi.coords()[i]));
      return Ideal(phi.graph_context(), std::move(g));
    }();
    const auto& basis = graph.basis(order);
    std::vector<Poly> closed, lcs;
    for (std::size_t k = 0; k < basis.polys.size(); ++k) {
      const auto& poly = basis.polys[k];
      if (!phi.graph_poly_involves_source(poly)) {
        closed.push_back(phi.graph_to_target(poly));
        continue;
      }
      const auto& terms = basis.sorted[k];
      auto x_part = [&](const Monomial& mono) {
        return std::vector<int>(mono.exponents().begin(), mono.exponents().begin() + static_cast<long>(m));
      };
      const auto lead = x_part(terms.front().monomial);
      std::vector<Term> coeff;
      for (const auto& t : terms) {
        if (x_part(t.monomial) != lead) break;
        std::vector<int> y(t.monomial.exponents().begin() + static_cast<long>(m), t.monomial.exponents().end());
        coeff.push_back({Monomial(std::move(y)), t.coeff});
      }
      Poly c = Poly::from_terms(tgt, std::move(coeff));
      if (c.is_constant()) continue;
      if (std::find(lcs.begin(), lcs.end(), c) == lcs.end()) lcs.push_back(std::move(c));
    }
    Poly c = Poly::constant(tgt, 1);
    for (const auto& l : lcs) c *= l;
    Ideal e(tgt, std::move(closed));
    pieces.push_back({e, Ideal(tgt, {c})});
    if (c.is_constant()) {
      exact = true;
      break;
    }
    Poly pulled = substitute(c, phi.coords());
    if (radical_member(pulled, s)) break;  // no progress possible
    s = s.with({pulled});
  }
  return prune(ConstructibleSet(tgt, std::move(pieces), exact));
}

struct SurjectivityReport {
  ConstructibleSet image;
  ConstructibleSet complement;
  Ideal complement_closure;
  int complement_dim = -1;
  int target_dim = 0;
  Verdict almost_surjective = Verdict::unknown;
  Verdict surjective = Verdict::unknown;
  bool exact = false;
};

/// Decides dim closure(Y minus Φ(X)) <= dim Y - 2. An inexact image still
/// yields a definite yes when the over-approximated complement is small.
inline SurjectivityReport almost_surjective(const Morphism& phi, int depth = 8) {
  ConstructibleSet image = constructible_image(phi, depth);
  ConstructibleSet rest = complement(image, phi.target().ideal());
  Ideal closure = closure_of(rest);
  int cdim = dimension(closure);
  int ydim = phi.target().dimension();
  bool small = cdim <= ydim - 2;
  SurjectivityReport r{image, rest, closure, cdim, ydim, Verdict::unknown, Verdict::unknown, image.exact()};
  if (image.exact()) {
    r.almost_surjective = verdict_of(small);
    r.surjective = verdict_of(rest.pieces().empty());
  } else {
    r.almost_surjective = small ? Verdict::yes : Verdict::unknown;
    r.surjective = rest.pieces().empty() ? Verdict::yes : Verdict::unknown;
  }
  return r;
}

}  // namespace polymap
