#pragma once

// Buchberger kernel. Polynomials are handled as term lists sorted in
// descending order for the active monomial order, so leading terms are the
// front element and reductions are linear merges.

#include <map>
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "polymap/cancel.hpp"
#include "polymap/poly.hpp"

namespace polymap::gb {

using TermList = std::vector<Term>;

enum class Selection {
  normal,  ///< pair with the smallest lcm first
  random,  ///< uniformly random pending pair, seeded
};

struct BuchbergerOptions {
  Selection selection = Selection::normal;
  std::uint64_t seed = 0;
};

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t coprime_skipped = 0;
  std::size_t chain_skipped = 0;
  std::size_t zero_reductions = 0;
};

inline TermList sorted_terms(const Poly& p, const MonomialOrder& ord) {
  TermList t(p.terms().begin(), p.terms().end());
  if (ord.kind() != MonomialOrder::Kind::grevlex)
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.monomial, b.monomial); });
  return t;
}

inline Poly to_poly(TermList terms, const VarContext& ctx) {
  return Poly::from_terms(ctx, std::move(terms));
}

/// a[a_from..] + c * m * b[b_from..], all sorted for `ord`.
inline TermList axpy(const TermList& a, std::size_t a_from, const Rational& c, const Monomial& m,
                     const TermList& b, std::size_t b_from, const MonomialOrder& ord) {
  TermList out;
  out.reserve((a.size() - a_from) + (b.size() - b_from));
  std::size_t i = a_from, j = b_from;
  Monomial mb;
  bool have_mb = false;
  while (i < a.size() || j < b.size()) {
    if (j < b.size() && !have_mb) {
      mb = b[j].monomial * m;
      have_mb = true;
    }
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = ord.compare(a[i].monomial, mb);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(mb), c * b[j].coeff});
      ++j;
      have_mb = false;
    } else {
      Rational s = a[i].coeff + c * b[j].coeff;
      if (s != 0) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
      have_mb = false;
    }
  }
  return out;
}

inline void make_monic(TermList& p) {
  if (p.empty() || p.front().coeff == 1) return;
  Rational inv = 1 / p.front().coeff;
  for (auto& t : p) t.coeff *= inv;
}

/// Fully reduced remainder of h modulo `basis` (monic, sorted for `ord`).
/// `skip` excludes one basis index (used by interreduction). Pending terms
/// live in a tree ordered by `ord`, so each step costs the size of the
/// divisor rather than the size of the running remainder.
inline TermList normal_form(TermList h, std::span<const TermList> basis, const MonomialOrder& ord,
                            std::size_t skip = static_cast<std::size_t>(-1)) {
  auto before = [&ord](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; };
  std::map<Monomial, Rational, decltype(before)> pending(before);
  for (auto& t : h) pending.emplace(std::move(t.monomial), std::move(t.coeff));
  TermList rem;
  std::size_t steps = 0;
  while (!pending.empty()) {
    if ((++steps & 0xff) == 0) throw_if_cancelled();
    auto top = pending.begin();
    const Monomial& lm = top->first;
    const TermList* divisor = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || basis[k].empty()) continue;
      if (basis[k].front().monomial.divides(lm)) {
        divisor = &basis[k];
        break;
      }
    }
    if (!divisor) {
      rem.push_back({top->first, std::move(top->second)});
      pending.erase(top);
      continue;
    }
    Rational c = -top->second / divisor->front().coeff;
    Monomial q = lm / divisor->front().monomial;
    pending.erase(top);
    for (std::size_t j = 1; j < divisor->size(); ++j) {
      const Term& t = (*divisor)[j];
      Rational add = c * t.coeff;
      auto [it, inserted] = pending.try_emplace(t.monomial * q, add);
      if (!inserted) {
        it->second += add;
        if (it->second == 0) pending.erase(it);
      }
    }
  }
  return rem;
}

namespace detail {

struct Pair {
  std::size_t i, j;  // i < j
  Monomial lcm;
};

class PairTable {
 public:
  void grow(std::size_t n) {
    for (auto& row : pending_) row.resize(n, 0);
    pending_.resize(n, std::vector<char>(n, 0));
  }
  bool pending(std::size_t a, std::size_t b) const {
    return a < b ? pending_[a][b] : pending_[b][a];
  }
  void set(std::size_t a, std::size_t b, bool v) { (a < b ? pending_[a][b] : pending_[b][a]) = v; }

 private:
  std::vector<std::vector<char>> pending_;
};

}  // namespace detail

/// Reduced Gröbner basis of `known` ∪ `gens`, where `known` is already a
/// Gröbner basis for `ord` (may be empty). Result is monic and sorted by
/// descending leading monomial, hence unique for (ideal, order).
inline std::vector<TermList> buchberger(std::vector<TermList> known, std::vector<TermList> gens,
                                        const MonomialOrder& ord, BuchbergerOptions opts = {},
                                        BuchbergerStats* stats = nullptr) {
  std::vector<TermList> g;
  g.reserve(known.size() + gens.size());
  for (auto& k : known) {
    if (k.empty()) continue;
    make_monic(k);
    g.push_back(std::move(k));
  }
  detail::PairTable table;
  table.grow(g.size());
  std::vector<detail::Pair> pairs;
  std::mt19937_64 rng(opts.seed);
  BuchbergerStats local;
  BuchbergerStats& st = stats ? *stats : local;

  auto add = [&](TermList p) {
    make_monic(p);
    std::size_t t = g.size();
    g.push_back(std::move(p));
    table.grow(g.size());
    for (std::size_t i = 0; i < t; ++i) {
      pairs.push_back({i, t, lcm(g[i].front().monomial, g[t].front().monomial)});
      table.set(i, t, true);
    }
  };

  if (opts.selection == Selection::random) std::shuffle(gens.begin(), gens.end(), rng);
  for (auto& f : gens) {
    if (f.empty()) continue;
    TermList r = normal_form(std::move(f), g, ord);
    if (!r.empty()) add(std::move(r));
  }

  while (!pairs.empty()) {
    throw_if_cancelled();
    std::size_t pick = 0;
    if (opts.selection == Selection::random) {
      pick = std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng);
    } else {
      for (std::size_t k = 1; k < pairs.size(); ++k) {
        int c = ord.compare(pairs[k].lcm, pairs[pick].lcm);
        if (c < 0 || (c == 0 && std::pair(pairs[k].j, pairs[k].i) <
                                    std::pair(pairs[pick].j, pairs[pick].i)))
          pick = k;
      }
    }
    detail::Pair p = std::move(pairs[pick]);
    pairs[pick] = std::move(pairs.back());
    pairs.pop_back();
    table.set(p.i, p.j, false);
    ++st.pairs_considered;

    const Monomial& li = g[p.i].front().monomial;
    const Monomial& lj = g[p.j].front().monomial;
    if (li.coprime(lj)) {
      ++st.coprime_skipped;
      continue;
    }
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      if (table.pending(p.i, k) || table.pending(p.j, k)) continue;
      if (g[k].front().monomial.divides(p.lcm)) chain = true;
    }
    if (chain) {
      ++st.chain_skipped;
      continue;
    }
    TermList s = axpy(TermList{}, 0, Rational(1), p.lcm / li, g[p.i], 1, ord);
    s = axpy(s, 0, Rational(-1), p.lcm / lj, g[p.j], 1, ord);
    TermList r = normal_form(std::move(s), g, ord);
    if (r.empty()) {
      ++st.zero_reductions;
      continue;
    }
    add(std::move(r));
  }

  // Minimalize: drop elements whose leading monomial is a multiple of another.
  std::vector<TermList> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& lj = g[j].front().monomial;
      const Monomial& li = g[i].front().monomial;
      if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    TermList tail(minimal[i].begin() + 1, minimal[i].end());
    TermList reduced = normal_form(std::move(tail), minimal, ord, i);
    reduced.insert(reduced.begin(), minimal[i].front());
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const TermList& a, const TermList& b) {
    return ord.greater(a.front().monomial, b.front().monomial);
  });
  return minimal;
}

}  // namespace polymap::gb
