#pragma once

#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polymap/ideal.hpp"
#include "polymap/poly.hpp"

namespace polymap {

/// Three-valued outcome for checks that may be undecided by bounded procedures.
enum class Verdict { no, yes, unknown };

inline Verdict verdict_of(bool b) { return b ? Verdict::yes : Verdict::no; }

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "false";
    case Verdict::yes: return "true";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

/// User assertions about a variety. Never verified by the engine; verdicts
/// that depend on them say so.
struct VarietyFlags {
  bool assert_irreducible = false;
  bool assert_factorial = false;
};

/// Zero set of an ideal in affine space over the algebraic closure of Q.
class AffineVariety {
 public:
  explicit AffineVariety(Ideal ideal, VarietyFlags flags = {})
      : ideal_(std::move(ideal)), flags_(flags) {
    if (ideal_.is_unit())
      throw PreconditionError("variety ideal is the unit ideal (use AffineVariety::empty)");
  }

  static AffineVariety affine_space(VarContext ctx, VarietyFlags flags = {}) {
    return AffineVariety(Ideal::zero(std::move(ctx)), flags);
  }

  static AffineVariety empty(VarContext ctx) {
    AffineVariety v(Ideal::zero(ctx));
    v.ideal_ = Ideal::unit(std::move(ctx));
    return v;
  }

  const VarContext& ambient() const noexcept { return ideal_.context(); }
  const Ideal& ideal() const noexcept { return ideal_; }
  const VarietyFlags& flags() const noexcept { return flags_; }
  bool is_empty() const { return ideal_.is_unit(); }
  bool is_affine_space() const { return ideal_.groebner().empty(); }
  int dimension() const { return polymap::dimension(ideal_); }

 private:
  Ideal ideal_;
  VarietyFlags flags_;
};

/// Polynomial map X -> Y given by coordinate functions over X's ambient
/// ring, one per target variable. Construction checks that every generator
/// of I(Y) pulls back into I(X).
///
/// Besides the data the morphism owns two derived rings that every analysis
/// uses, with their ideals (and hence Gröbner caches) shared by copies:
///  - the graph ring (x_1..x_m, y_1..y_n) with I(X) + <y_i - phi_i>;
///  - the fiber ring (x_1..x_m, x'_1..x'_m) with
///    I(X)(x) + I(X)(x') + <phi_i(x) - phi_i(x')>.
class Morphism {
 public:
  Morphism(AffineVariety source, AffineVariety target, std::vector<Poly> coords)
      : source_(std::move(source)), target_(std::move(target)), coords_(std::move(coords)) {
    if (coords_.size() != target_.ambient().size())
      throw std::invalid_argument("morphism: " + std::to_string(coords_.size()) +
                                  " coordinate functions for a target with " +
                                  std::to_string(target_.ambient().size()) + " variables");
    for (const auto& c : coords_) require_same_context(c.context(), source_.ambient(), "morphism");
    for (const auto& g : target_.ideal().generators()) {
      if (!member(substitute(g, coords_), source_.ideal()))
        throw PreconditionError("morphism is not well defined: target equation " + to_string(g) +
                                " does not vanish on the image");
    }
    build_rings();
  }

  const AffineVariety& source() const noexcept { return source_; }
  const AffineVariety& target() const noexcept { return target_; }
  std::span<const Poly> coords() const noexcept { return coords_; }
  std::size_t source_vars() const noexcept { return source_.ambient().size(); }
  std::size_t target_vars() const noexcept { return target_.ambient().size(); }

  const VarContext& graph_context() const noexcept { return rings_->graph_ctx; }
  const Ideal& graph_ideal() const noexcept { return rings_->graph_ideal; }
  /// Elimination order for the graph ring: source block first.
  MonomialOrder graph_order() const { return MonomialOrder::block(source_vars()); }

  const VarContext& fiber_context() const noexcept { return rings_->fiber_ctx; }
  const Ideal& fiber_ideal() const noexcept { return rings_->fiber_ideal; }

  Poly source_to_graph(const Poly& f) const { return f.remap(graph_context(), rings_->source_in_graph); }
  Poly target_to_graph(const Poly& f) const { return f.remap(graph_context(), rings_->target_in_graph); }
  /// Requires f free of source variables.
  Poly graph_to_target(const Poly& f) const { return f.remap(target_.ambient(), rings_->graph_to_target); }
  Poly fiber_first(const Poly& f) const { return f.remap(fiber_context(), rings_->source_in_graph); }
  Poly fiber_second(const Poly& f) const { return f.remap(fiber_context(), rings_->source_primed); }

  bool graph_poly_involves_source(const Poly& f) const {
    for (std::size_t v = 0; v < source_vars(); ++v)
      if (f.involves(v)) return true;
    return false;
  }

 private:
  struct Rings {
    VarContext graph_ctx;
    Ideal graph_ideal{VarContext{}};
    VarContext fiber_ctx;
    Ideal fiber_ideal{VarContext{}};
    std::vector<int> source_in_graph, target_in_graph, graph_to_target, source_primed;
  };

  void build_rings() {
    auto rings = std::make_shared<Rings>();
    const std::size_t m = source_vars(), n = target_vars();
    const auto& src = source_.ambient();
    const auto& tgt = target_.ambient();

    rings->graph_ctx = src.extended(tgt.names());
    rings->source_in_graph.resize(m);
    std::iota(rings->source_in_graph.begin(), rings->source_in_graph.end(), 0);
    rings->target_in_graph.resize(n);
    std::iota(rings->target_in_graph.begin(), rings->target_in_graph.end(), static_cast<int>(m));
    rings->graph_to_target.assign(m + n, -1);
    for (std::size_t i = 0; i < n; ++i) rings->graph_to_target[m + i] = static_cast<int>(i);

    std::vector<Poly> gens;
    for (const auto& g : source_.ideal().generators())
      gens.push_back(g.remap(rings->graph_ctx, rings->source_in_graph));
    for (std::size_t i = 0; i < n; ++i)
      gens.push_back(Poly::variable(rings->graph_ctx, m + i) -
                     coords_[i].remap(rings->graph_ctx, rings->source_in_graph));
    rings->graph_ideal = Ideal(rings->graph_ctx, std::move(gens));

    std::vector<std::string> primed;
    for (const auto& name : src.names()) primed.push_back(name + "'");
    rings->fiber_ctx = src.extended(primed);
    rings->source_primed.resize(m);
    std::iota(rings->source_primed.begin(), rings->source_primed.end(), static_cast<int>(m));
    std::vector<Poly> fib;
    for (const auto& g : source_.ideal().generators()) {
      fib.push_back(g.remap(rings->fiber_ctx, rings->source_in_graph));
      fib.push_back(g.remap(rings->fiber_ctx, rings->source_primed));
    }
    for (const auto& c : coords_)
      fib.push_back(c.remap(rings->fiber_ctx, rings->source_in_graph) -
                    c.remap(rings->fiber_ctx, rings->source_primed));
    rings->fiber_ideal = Ideal(rings->fiber_ctx, std::move(fib));
    rings_ = std::move(rings);
  }

  AffineVariety source_;
  AffineVariety target_;
  std::vector<Poly> coords_;
  std::shared_ptr<const Rings> rings_;
};

/// Composite f∘Φ reduced modulo I(X).
inline Poly pullback(const Morphism& phi, const Poly& f) {
  require_same_context(f.context(), phi.target().ambient(), "pullback");
  return normal_form(substitute(f, phi.coords()), phi.source().ideal());
}

/// Ideal of the Zariski closure of Φ(X), over the target ring.
inline Ideal image_closure(const Morphism& phi) {
  Ideal elim = eliminate_leading(phi.graph_ideal(), phi.source_vars());
  std::vector<Poly> gens;
  for (const auto& g : elim.generators()) gens.push_back(phi.graph_to_target(g));
  return Ideal(phi.target().ambient(), std::move(gens));
}

inline bool is_dominant(const Morphism& phi) {
  Ideal closure = image_closure(phi);
  for (const auto& g : closure.generators())
    if (!radical_member(g, phi.target().ideal())) return false;
  return true;
}

/// Closure of {(Φ(x), g(x))} in Y × A^1: an ideal over the target ring
/// extended by one fresh variable (last).
inline Ideal graph_closure(const Morphism& phi, const Poly& g) {
  require_same_context(g.context(), phi.source().ambient(), "graph_closure");
  const std::size_t m = phi.source_vars(), n = phi.target_vars();
  VarContext full = phi.graph_context().extended("w");
  VarContext closure_ctx = phi.target().ambient().extended("w");
  const auto order = phi.graph_order();
  std::vector<Poly> known;
  for (const auto& b : phi.graph_ideal().groebner(order)) known.push_back(b.embed(full));
  Poly w = Poly::variable(full, m + n);
  std::vector<int> src(m);
  std::iota(src.begin(), src.end(), 0);
  Poly extra = w - g.remap(full, src);
  Ideal ideal = Ideal::extend_groebner(full, known, {extra}, order);
  Ideal elim = eliminate_leading(ideal, m);
  std::vector<int> down(m + n + 1, -1);
  for (std::size_t i = 0; i <= n; ++i) down[m + i] = static_cast<int>(i);
  std::vector<Poly> gens;
  for (const auto& e : elim.generators()) gens.push_back(e.remap(closure_ctx, down));
  return Ideal(closure_ctx, std::move(gens));
}

inline int dimension_of_graph(const Morphism& phi, const Poly& g) {
  return dimension(graph_closure(phi, g));
}

}  // namespace polymap
