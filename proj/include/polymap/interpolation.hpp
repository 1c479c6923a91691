#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polymap/morphism.hpp"

namespace polymap {

/// True iff g(x) - g(x') vanishes on the fiber product X ×_Y X.
inline bool determined_by(const Morphism& phi, const Poly& g) {
  require_same_context(g.context(), phi.source().ambient(), "determined_by");
  return radical_member(phi.fiber_first(g) - phi.fiber_second(g), phi.fiber_ideal());
}

/// Geometric injectivity: every x_j - x'_j vanishes on the fiber product.
inline bool injective(const Morphism& phi) {
  const auto& src = phi.source().ambient();
  for (std::size_t j = 0; j < src.size(); ++j) {
    Poly xj = Poly::variable(src, j);
    if (!radical_member(phi.fiber_first(xj) - phi.fiber_second(xj), phi.fiber_ideal())) return false;
  }
  return true;
}

struct InterpolationResult {
  enum class Status { interpolant, not_in_subalgebra, not_determined };

  Status status = Status::not_in_subalgebra;
  std::optional<Poly> interpolant;  // over the target ring
  Poly normal_form;                 // over the graph ring (x, y)

  bool ok() const { return status == Status::interpolant; }
};

inline const char* to_string(InterpolationResult::Status s) {
  switch (s) {
    case InterpolationResult::Status::interpolant: return "interpolant";
    case InterpolationResult::Status::not_in_subalgebra: return "not_in_subalgebra";
    case InterpolationResult::Status::not_determined: return "not_determined";
  }
  return "?";
}

/// Membership of g in the image of pullback. With `classify`, a failure is
/// further split by whether g is at least fiber-constant.
inline InterpolationResult interpolate(const Morphism& phi, const Poly& g, bool classify = false) {
  require_same_context(g.context(), phi.source().ambient(), "interpolate");
  Poly nf = normal_form(phi.source_to_graph(g), phi.graph_ideal(), phi.graph_order());
  InterpolationResult r{InterpolationResult::Status::not_in_subalgebra, std::nullopt, nf};
  if (phi.graph_poly_involves_source(nf)) {
    if (classify && !determined_by(phi, g)) r.status = InterpolationResult::Status::not_determined;
    return r;
  }
  Poly p = phi.graph_to_target(nf);
  if (!member(substitute(p, phi.coords()) - g, phi.source().ideal()))
    throw CertificateFailure("interpolate: interpolant " + to_string(p) + " does not pull back to " +
                             to_string(g));
  r.status = InterpolationResult::Status::interpolant;
  r.interpolant = std::move(p);
  return r;
}

struct MinPolyResult {
  enum class Status { relation, no_relation, not_hypersurface, target_not_affine_space, not_dominant };

  Status status = Status::no_relation;
  std::optional<Poly> relation;  // over target ring + w
  int degree = 0;                // degree of the relation in w
  std::optional<std::pair<Poly, Poly>> rational;  // numerator, denominator over the target ring
  std::optional<Ideal> graph;
};

inline const char* to_string(MinPolyResult::Status s) {
  switch (s) {
    case MinPolyResult::Status::relation: return "relation";
    case MinPolyResult::Status::no_relation: return "no_relation";
    case MinPolyResult::Status::not_hypersurface: return "not_hypersurface";
    case MinPolyResult::Status::target_not_affine_space: return "target_not_affine_space";
    case MinPolyResult::Status::not_dominant: return "not_dominant";
  }
  return "?";
}

/// Generator of the graph closure of (Φ, g) when it is a hypersurface in
/// Y × A^1. Requires Y to be affine space and Φ dominant; violated
/// requirements are reported as states, not thrown.
inline MinPolyResult minimal_polynomial(const Morphism& phi, const Poly& g) {
  MinPolyResult r;
  if (!phi.target().is_affine_space()) {
    r.status = MinPolyResult::Status::target_not_affine_space;
    return r;
  }
  Ideal j = graph_closure(phi, g);
  r.graph = j;
  auto q = is_principal(j);
  if (!q) {
    r.status = MinPolyResult::Status::not_hypersurface;
    return r;
  }
  if (!is_dominant(phi)) {
    r.status = MinPolyResult::Status::not_dominant;
    return r;
  }
  if (q->is_zero()) {
    r.status = MinPolyResult::Status::no_relation;
    return r;
  }
  const std::size_t w = j.context().size() - 1;
  std::vector<Poly> values(phi.coords().begin(), phi.coords().end());
  values.push_back(g);
  if (!member(substitute(*q, values), phi.source().ideal()))
    throw CertificateFailure("minimal_polynomial: relation does not vanish on the graph");
  r.status = MinPolyResult::Status::relation;
  r.degree = q->degree_in(w);
  // scale so the coefficient of w^d has leading coefficient 1
  *q *= 1 / coefficients_in(*q, w).back().leading_term().coeff;
  if (r.degree == 1) {
    auto c = coefficients_in(*q, w);
    std::vector<int> down(j.context().size(), -1);
    for (std::size_t i = 0; i < w; ++i) down[i] = static_cast<int>(i);
    const auto& tgt = phi.target().ambient();
    r.rational = std::pair{(-c[0]).remap(tgt, down), c[1].remap(tgt, down)};
  }
  r.relation = std::move(*q);
  return r;
}

struct DivisibilityReport {
  bool source_divides = false;
  bool target_divides = false;

  /// (true, false) means Φ is not almost surjective.
  bool witnesses_failure() const { return source_divides && !target_divides; }
};

inline DivisibilityReport divides_transfer(const Morphism& phi, const Poly& f, const Poly& g) {
  const auto& tgt = phi.target().ambient();
  require_same_context(f.context(), tgt, "divides_transfer");
  require_same_context(g.context(), tgt, "divides_transfer");
  if (member(f, phi.target().ideal()))
    throw PreconditionError("divides_transfer: f vanishes on the target");
  Poly fc = pullback(phi, f), gc = pullback(phi, g);
  if (fc.is_zero() && !gc.is_zero())
    throw PreconditionError("divides_transfer: degenerate, f∘Φ is zero but g∘Φ is not");
  DivisibilityReport r;
  r.source_divides = member(gc, phi.source().ideal().with({fc}));
  r.target_divides = member(g, phi.target().ideal().with({f}));
  return r;
}

struct ExtensionResult {
  InterpolationResult result;
  bool unique = false;  // pullback is injective on A(Y)
};

/// Regular function on Y whose composite with Φ is `composite`.
inline ExtensionResult extend(const Morphism& phi, const Poly& composite) {
  Ideal closure = image_closure(phi);
  for (const auto& e : closure.generators())
    if (!radical_member(e, phi.target().ideal()))
      throw PreconditionError("extend: morphism is not dominant");
  ExtensionResult r{interpolate(phi, composite), false};
  r.unique = contains(phi.target().ideal(), closure);
  return r;
}

}  // namespace polymap
