#pragma once

#include <future>
#include <optional>
#include <vector>

#include "polymap/biregular.hpp"
#include "polymap/cancel.hpp"
#include "polymap/resultant.hpp"

namespace polymap {

/// Polynomial self-map of affine n-space. Source and target carry their own
/// variable names; the target is flagged factorial.
class Endomorphism {
 public:
  Endomorphism(VarContext source, VarContext target, std::vector<Poly> coords)
      : map_(AffineVariety::affine_space(source), AffineVariety::affine_space(target, {false, true}),
             std::move(coords)) {
    if (source.size() != target.size())
      throw std::invalid_argument("endomorphism: source and target dimensions differ");
  }

  /// Requires both sides to be affine spaces of equal dimension.
  explicit Endomorphism(const Morphism& m)
      : Endomorphism(m.source().ambient(), m.target().ambient(),
                     std::vector<Poly>(m.coords().begin(), m.coords().end())) {
    if (!m.source().is_affine_space() || !m.target().is_affine_space())
      throw PreconditionError("endomorphism: source and target must be affine spaces");
  }

  std::size_t size() const noexcept { return map_.source_vars(); }
  std::span<const Poly> coords() const noexcept { return map_.coords(); }
  const Morphism& morphism() const noexcept { return map_; }
  const VarContext& source_context() const noexcept { return map_.source().ambient(); }
  const VarContext& target_context() const noexcept { return map_.target().ambient(); }

 private:
  Morphism map_;
};

inline Poly jacobian_det(const Endomorphism& phi) {
  const std::size_t n = phi.size();
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(derivative(phi.coords()[i], j));
  return determinant(std::move(m), phi.source_context());
}

inline bool is_etale(const Endomorphism& phi) {
  Poly d = jacobian_det(phi);
  return d.is_constant() && !d.is_zero();
}

struct Inversion {
  std::optional<std::vector<Poly>> inverse;  // over target variables
  std::optional<std::size_t> failing_coordinate;
};

/// Interpolates each source coordinate; returns Ψ only when Ψ∘Φ and Φ∘Ψ
/// both expand to the identity.
inline Inversion invert(const Endomorphism& phi) {
  Inversion out;
  const auto& src = phi.source_context();
  const auto& tgt = phi.target_context();
  std::vector<Poly> psi;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    auto r = interpolate(phi.morphism(), Poly::variable(src, j));
    if (!r.ok()) {
      out.failing_coordinate = j;
      return out;
    }
    psi.push_back(*r.interpolant);
  }
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (substitute(psi[j], phi.coords()) != Poly::variable(src, j)) return out;
    if (substitute(phi.coords()[j], psi) != Poly::variable(tgt, j)) return out;
  }
  out.inverse = std::move(psi);
  return out;
}

struct JCReport {
  bool etale = false;
  Verdict injective = Verdict::unknown;
  std::vector<bool> coords_determined;
  bool invertible = false;
  std::optional<std::vector<Poly>> inverse;
  bool consistent = false;
};

/// Runs the equivalent criteria concurrently. On an étale map they must
/// agree, so disagreement points at an engine defect.
inline JCReport jc_criteria(const Endomorphism& phi) {
  if (!is_etale(phi))
    throw PreconditionError("jc: Jacobian determinant is not a nonzero constant: " + to_string(jacobian_det(phi)));
  std::stop_token token = current_stop_token();
  auto task = [token](auto fn) {
    return std::async(std::launch::async, [token, fn] {
      CancelScope scope(token);
      return fn();
    });
  };
  const Morphism& m = phi.morphism();
  auto inj = task([&m] { return injective(m); });
  auto det = task([&m] {
    std::vector<bool> out;
    const auto& src = m.source().ambient();
    for (std::size_t j = 0; j < src.size(); ++j) out.push_back(determined_by(m, Poly::variable(src, j)));
    return out;
  });
  auto inv = task([&phi] { return invert(phi); });

  JCReport r;
  r.etale = true;
  r.injective = verdict_of(inj.get());
  r.coords_determined = det.get();
  Inversion i = inv.get();
  r.invertible = i.inverse.has_value();
  r.inverse = std::move(i.inverse);
  bool all_determined = std::all_of(r.coords_determined.begin(), r.coords_determined.end(), [](bool b) { return b; });
  r.consistent = (r.injective == Verdict::yes) == r.invertible && r.invertible == all_determined;
  return r;
}

struct DichotomyReport {
  enum class Branch { codim_one, biregular, violation, unknown };

  Branch branch = Branch::unknown;
  SurjectivityReport surjectivity;
  int codimension = 0;  // dim Y - dim of the complement closure
  std::optional<BiregularReport> biregular;
};

inline const char* to_string(DichotomyReport::Branch b) {
  switch (b) {
    case DichotomyReport::Branch::codim_one: return "codim1";
    case DichotomyReport::Branch::biregular: return "biregular";
    case DichotomyReport::Branch::violation: return "violation";
    case DichotomyReport::Branch::unknown: return "unknown";
  }
  return "?";
}

/// For an injective étale map into a factorial variety the complement of the
/// image has codimension one unless the map is biregular. Étaleness is the
/// caller's assertion.
inline DichotomyReport etale_dichotomy(const Morphism& phi, bool etale_asserted, int depth = 8) {
  if (!etale_asserted) throw PreconditionError("dichotomy: morphism is not asserted etale");
  if (!phi.target().flags().assert_factorial)
    throw PreconditionError("dichotomy: target is not asserted factorial");
  if (!injective(phi)) throw PreconditionError("dichotomy: morphism is not injective");
  SurjectivityReport s = almost_surjective(phi, depth);
  int codim = s.target_dim - s.complement_dim;
  DichotomyReport r{DichotomyReport::Branch::unknown, s, codim, std::nullopt};
  if (!s.exact) return r;
  if (codim == 1) {
    r.branch = DichotomyReport::Branch::codim_one;
    return r;
  }
  r.biregular = biregular(phi, depth);
  r.branch = r.biregular->verdict == Verdict::yes ? DichotomyReport::Branch::biregular
                                                  : DichotomyReport::Branch::violation;
  return r;
}

}  // namespace polymap
