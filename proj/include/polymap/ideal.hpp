#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "polymap/groebner.hpp"
#include "polymap/poly.hpp"

namespace polymap {

/// Reduced Gröbner basis for one monomial order, in both representations.
struct GroebnerBasis {
  MonomialOrder order;
  std::vector<Poly> polys;           // canonical storage
  std::vector<gb::TermList> sorted;  // terms sorted for `order`

  bool is_unit() const { return polys.size() == 1 && polys[0].is_constant(); }
};

/// Ideal given by generators. Reduced bases are computed on demand and cached
/// per order; the cache is shared between copies and safe to use from
/// several threads.
class Ideal {
 public:
  explicit Ideal(VarContext ctx, std::vector<Poly> gens = {})
      : ctx_(std::move(ctx)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      require_same_context(g.context(), ctx_, "ideal");
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal zero(VarContext ctx) { return Ideal(std::move(ctx)); }
  static Ideal unit(VarContext ctx) {
    Poly one = Poly::constant(ctx, 1);
    return Ideal(std::move(ctx), {std::move(one)});
  }

  /// Ideal generated by `known` (already a Gröbner basis for `ord`) and
  /// `extra`; the basis for `ord` is computed incrementally and cached.
  static Ideal extend_groebner(VarContext ctx, std::span<const Poly> known, std::vector<Poly> extra,
                               const MonomialOrder& ord) {
    std::vector<Poly> all(known.begin(), known.end());
    all.insert(all.end(), extra.begin(), extra.end());
    Ideal ideal(ctx, all);
    std::vector<gb::TermList> k, e;
    for (const auto& p : known) k.push_back(gb::sorted_terms(p, ord));
    for (const auto& p : extra) e.push_back(gb::sorted_terms(p, ord));
    ideal.store(ord, gb::buchberger(std::move(k), std::move(e), ord));
    return ideal;
  }

  const VarContext& context() const noexcept { return ctx_; }
  std::span<const Poly> generators() const noexcept { return gens_; }

  /// Cached reduced Gröbner basis.
  const GroebnerBasis& basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->bases.find(ord);
      if (it != cache_->bases.end()) return *it->second;
    }
    std::vector<gb::TermList> gens;
    gens.reserve(gens_.size());
    for (const auto& g : gens_) gens.push_back(gb::sorted_terms(g, ord));
    return store(ord, gb::buchberger({}, std::move(gens), ord));
  }

  const std::vector<Poly>& groebner(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    return basis(ord).polys;
  }

  bool is_unit() const { return basis().is_unit(); }
  bool is_zero() const { return gens_.empty(); }

  friend Ideal operator+(const Ideal& a, const Ideal& b) {
    require_same_context(a.ctx_, b.ctx_, "ideal sum");
    std::vector<Poly> g(a.gens_);
    g.insert(g.end(), b.gens_.begin(), b.gens_.end());
    return Ideal(a.ctx_, std::move(g));
  }

  Ideal with(std::vector<Poly> extra) const {
    std::vector<Poly> g(gens_);
    for (auto& e : extra) g.push_back(std::move(e));
    return Ideal(ctx_, std::move(g));
  }

  friend Ideal operator*(const Ideal& a, const Ideal& b) {
    require_same_context(a.ctx_, b.ctx_, "ideal product");
    std::vector<Poly> g;
    for (const auto& p : a.gens_)
      for (const auto& q : b.gens_) g.push_back(p * q);
    return Ideal(a.ctx_, std::move(g));
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<MonomialOrder, std::unique_ptr<const GroebnerBasis>> bases;
  };

  const GroebnerBasis& store(const MonomialOrder& ord, std::vector<gb::TermList> sorted) const {
    auto b = std::make_unique<GroebnerBasis>();
    b->order = ord;
    for (const auto& t : sorted) b->polys.push_back(gb::to_poly(t, ctx_));
    b->sorted = std::move(sorted);
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->bases.try_emplace(ord, std::move(b));
    return *it->second;
  }

  VarContext ctx_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

inline Poly normal_form(const Poly& f, const Ideal& ideal,
                        const MonomialOrder& ord = MonomialOrder::grevlex()) {
  require_same_context(f.context(), ideal.context(), "normal_form");
  const auto& b = ideal.basis(ord);
  return gb::to_poly(gb::normal_form(gb::sorted_terms(f, ord), b.sorted, ord), f.context());
}

inline bool member(const Poly& f, const Ideal& ideal) {
  return f.is_zero() || normal_form(f, ideal).is_zero();
}

/// J ⊆ I.
inline bool contains(const Ideal& big, const Ideal& small) {
  for (const auto& g : small.generators())
    if (!member(g, big)) return false;
  return true;
}

inline bool equal(const Ideal& a, const Ideal& b) {
  require_same_context(a.context(), b.context(), "ideal equality");
  return a.groebner() == b.groebner();
}

/// f vanishes on V(I) over the algebraic closure: 1 ∈ I + <1 - s f>.
inline bool radical_member(const Poly& f, const Ideal& ideal) {
  require_same_context(f.context(), ideal.context(), "radical_member");
  if (member(f, ideal)) return true;
  VarContext ext = ideal.context().extended("s");
  std::vector<Poly> gens;
  for (const auto& g : ideal.groebner()) gens.push_back(g.embed(ext));
  Poly s = Poly::variable(ext, ext.size() - 1);
  gens.push_back(Poly::constant(ext, 1) - s * f.embed(ext));
  return Ideal::extend_groebner(ext, std::span<const Poly>(gens.data(), gens.size() - 1),
                                {gens.back()}, MonomialOrder::grevlex())
      .is_unit();
}

/// I ∩ k[x_k, ..., x_n] for the first k variables eliminated, returned over
/// the same context.
inline Ideal eliminate_leading(const Ideal& ideal, std::size_t k) {
  if (k == 0) return ideal;
  const auto& basis = ideal.groebner(MonomialOrder::block(k));
  std::vector<Poly> kept;
  for (const auto& g : basis) {
    bool free = true;
    for (std::size_t v = 0; v < k && free; ++v) free = !g.involves(v);
    if (free) kept.push_back(g);
  }
  return Ideal(ideal.context(), std::move(kept));
}

/// I ∩ k[variables not in `drop`], returned over the same context.
inline Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> drop) {
  const VarContext& ctx = ideal.context();
  if (drop.empty()) return ideal;
  std::vector<char> dropped(ctx.size(), 0);
  for (auto d : drop) {
    if (d >= ctx.size()) throw std::out_of_range("eliminate: variable index out of range");
    dropped[d] = 1;
  }
  std::vector<std::string> names;
  std::vector<int> forward(ctx.size()), backward;
  for (std::size_t pass = 0; pass < 2; ++pass)
    for (std::size_t v = 0; v < ctx.size(); ++v)
      if (static_cast<bool>(dropped[v]) == (pass == 0)) {
        forward[v] = static_cast<int>(names.size());
        names.push_back(ctx.name(v));
      }
  VarContext permuted(names);
  backward.assign(ctx.size(), -1);
  for (std::size_t v = 0; v < ctx.size(); ++v)
    if (!dropped[v]) backward[static_cast<std::size_t>(forward[v])] = static_cast<int>(v);
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.remap(permuted, forward));
  std::size_t ndrop = static_cast<std::size_t>(std::count(dropped.begin(), dropped.end(), 1));
  Ideal elim = eliminate_leading(Ideal(permuted, std::move(gens)), ndrop);
  std::vector<Poly> back;
  for (const auto& g : elim.generators()) back.push_back(g.remap(ctx, backward));
  return Ideal(ctx, std::move(back));
}

inline Ideal intersect(const Ideal& a, const Ideal& b) {
  require_same_context(a.context(), b.context(), "intersect");
  const VarContext& ctx = a.context();
  if (a.is_zero() || b.is_zero()) return Ideal::zero(ctx);
  std::vector<std::string> names{ctx.fresh_name("t")};
  names.insert(names.end(), ctx.names().begin(), ctx.names().end());
  VarContext ext(names);
  std::vector<int> shift(ctx.size());
  std::iota(shift.begin(), shift.end(), 1);
  Poly t = Poly::variable(ext, 0);
  Poly one_minus_t = Poly::constant(ext, 1) - t;
  std::vector<Poly> gens;
  for (const auto& g : a.generators()) gens.push_back(t * g.remap(ext, shift));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.remap(ext, shift));
  Ideal elim = eliminate_leading(Ideal(ext, std::move(gens)), 1);
  std::vector<int> unshift(ext.size());
  std::iota(unshift.begin(), unshift.end(), -1);
  std::vector<Poly> back;
  for (const auto& g : elim.generators()) back.push_back(g.remap(ctx, unshift));
  return Ideal(ctx, std::move(back));
}

/// (I : f) = { g : g f ∈ I }.
inline Ideal quotient(const Ideal& ideal, const Poly& f) {
  require_same_context(f.context(), ideal.context(), "quotient");
  if (f.is_zero()) throw std::domain_error("quotient: divisor is the zero polynomial");
  if (f.is_constant()) return ideal;
  Ideal meet = intersect(ideal, Ideal(ideal.context(), {f}));
  std::vector<Poly> gens;
  for (const auto& g : meet.generators()) {
    auto q = divide_exact(g, f);
    if (!q) throw std::logic_error("quotient: intersection element not divisible");
    gens.push_back(std::move(*q));
  }
  return Ideal(ideal.context(), std::move(gens));
}

/// (I : f^∞) = (I + <1 - s f>) ∩ k[x].
inline Ideal saturate(const Ideal& ideal, const Poly& f) {
  require_same_context(f.context(), ideal.context(), "saturate");
  if (f.is_zero()) throw std::domain_error("saturate: divisor is the zero polynomial");
  if (f.is_constant()) return ideal;
  const VarContext& ctx = ideal.context();
  std::vector<std::string> names{ctx.fresh_name("s")};
  names.insert(names.end(), ctx.names().begin(), ctx.names().end());
  VarContext ext(names);
  std::vector<int> shift(ctx.size());
  std::iota(shift.begin(), shift.end(), 1);
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.remap(ext, shift));
  gens.push_back(Poly::constant(ext, 1) - Poly::variable(ext, 0) * f.remap(ext, shift));
  Ideal elim = eliminate_leading(Ideal(ext, std::move(gens)), 1);
  std::vector<int> unshift(ext.size());
  std::iota(unshift.begin(), unshift.end(), -1);
  std::vector<Poly> back;
  for (const auto& g : elim.generators()) back.push_back(g.remap(ctx, unshift));
  return Ideal(ctx, std::move(back));
}

/// Krull dimension of k[x]/I as the largest set of variables containing no
/// grevlex leading monomial's support; -1 for the unit ideal.
inline int dimension(const Ideal& ideal) {
  const auto& basis = ideal.groebner();
  const std::size_t n = ideal.context().size();
  if (basis.empty()) return static_cast<int>(n);
  if (ideal.is_unit()) return -1;
  if (n > 63) throw std::length_error("dimension: more than 63 variables");
  std::vector<std::uint64_t> masks;
  for (const auto& g : basis) masks.push_back(g.leading_term().monomial.support_mask());
  const std::uint64_t full = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  // Smallest hitting set of the supports; its complement is independent.
  for (std::size_t h = 1; h <= n; ++h) {
    // Gosper's hack over all h-subsets of n bits.
    std::uint64_t set = (std::uint64_t{1} << h) - 1;
    while (set <= full) {
      bool hits = std::all_of(masks.begin(), masks.end(), [&](std::uint64_t m) { return (m & set) != 0; });
      if (hits) return static_cast<int>(n - h);
      std::uint64_t c = set & (~set + 1), r = set + c;
      if (r == 0) break;
      set = (((r ^ set) >> 2) / c) | r;
    }
  }
  return 0;
}

/// A single generator when the reduced grevlex basis has one element (zero
/// for the zero ideal); nullopt otherwise.
inline std::optional<Poly> is_principal(const Ideal& ideal) {
  const auto& basis = ideal.groebner();
  if (basis.empty()) return Poly(ideal.context());
  if (basis.size() == 1) return basis[0];
  return std::nullopt;
}

}  // namespace polymap
