#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polymap {

/// Exponent vector over a fixed number of variables. Total degree is cached.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
    for (int e : exps_) {
      if (e < 0) throw std::invalid_argument("negative exponent in monomial");
      degree_ += e;
    }
  }

  static Monomial variable(std::size_t nvars, std::size_t index, int power = 1) {
    Monomial m(nvars);
    m.exps_[index] = power;
    m.degree_ = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }
  std::span<const int> exponents() const noexcept { return exps_; }

  bool divides(const Monomial& other) const {
    assert(size() == other.size());
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    assert(a.size() == b.size());
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  /// Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    assert(b.divides(a));
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] - b.exps_[i];
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  Monomial pow(int k) const {
    Monomial r(*this);
    for (int& e : r.exps_) e *= k;
    r.degree_ *= k;
    return r;
  }

  /// Bitmask of variables with positive exponent (first 64 variables).
  std::uint64_t support_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < exps_.size() && i < 64; ++i)
      if (exps_[i] != 0) mask |= std::uint64_t{1} << i;
    return mask;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int e : m.exponents()) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    return h;
  }
};

/// Term orders on monomials. `block(k)` compares the first k variables by
/// grevlex and breaks ties with grevlex on the remaining ones, so any monomial
/// involving the first block dominates every monomial free of it.
class MonomialOrder {
 public:
  enum class Kind { lex, grlex, grevlex, block };

  constexpr MonomialOrder() = default;

  static constexpr MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  static constexpr MonomialOrder grlex() { return MonomialOrder(Kind::grlex, 0); }
  static constexpr MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
  static constexpr MonomialOrder block(std::size_t k) { return MonomialOrder(Kind::block, k); }

  Kind kind() const noexcept { return kind_; }
  std::size_t block_size() const noexcept { return block_; }

  /// Sign of a - b in this order.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::lex:
        return lex_range(a, b, 0, a.size());
      case Kind::grlex:
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
        return lex_range(a, b, 0, a.size());
      case Kind::grevlex:
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
        return revlex_range(a, b, 0, a.size());
      case Kind::block: {
        std::size_t k = std::min(block_, a.size());
        if (int c = grevlex_range(a, b, 0, k)) return c;
        return grevlex_range(a, b, k, a.size());
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const {
    switch (kind_) {
      case Kind::lex: return "lex";
      case Kind::grlex: return "grlex";
      case Kind::grevlex: return "grevlex";
      case Kind::block: return "block(" + std::to_string(block_) + ")";
    }
    return "?";
  }

  friend constexpr auto operator<=>(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  constexpr MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  static int lex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  // Higher exponent in the last differing variable means smaller.
  static int revlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = hi; i > lo; --i)
      if (a[i - 1] != b[i - 1]) return a[i - 1] > b[i - 1] ? -1 : 1;
    return 0;
  }

  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    int da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    return revlex_range(a, b, lo, hi);
  }

  Kind kind_ = Kind::grevlex;
  std::size_t block_ = 0;
};

}  // namespace polymap
