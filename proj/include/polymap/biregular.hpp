#pragma once

#include <optional>
#include <vector>

#include "polymap/image.hpp"
#include "polymap/interpolation.hpp"

namespace polymap {

/// Candidate inverse ψ: Y -> X by interpolating each source coordinate.
/// Kept only if both composites reduce to the identity modulo the defining
/// ideals and ψ carries I(X) into I(Y).
struct InverseAttempt {
  std::optional<std::vector<Poly>> inverse;  // over the target ring
  std::optional<std::size_t> failing_coordinate;
};

inline InverseAttempt construct_inverse(const Morphism& phi) {
  const auto& src = phi.source().ambient();
  InverseAttempt out;
  std::vector<Poly> psi;
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto r = interpolate(phi, Poly::variable(src, j));
    if (!r.ok()) {
      out.failing_coordinate = j;
      return out;
    }
    psi.push_back(*r.interpolant);
  }
  const auto& tgt = phi.target().ambient();
  for (std::size_t i = 0; i < tgt.size(); ++i)
    if (!member(substitute(phi.coords()[i], psi) - Poly::variable(tgt, i), phi.target().ideal()))
      return out;
  for (const auto& h : phi.source().ideal().generators())
    if (!member(substitute(h, psi), phi.target().ideal())) return out;
  out.inverse = std::move(psi);
  return out;
}

struct BiregularReport {
  bool injective = false;
  SurjectivityReport surjectivity;
  InverseAttempt inverse;
  Verdict verdict = Verdict::unknown;
  bool consistent = true;  // verdict agrees with whether an inverse was found
};

/// Injective and almost surjective onto a factorial target. The target flag
/// is the caller's assertion.
inline BiregularReport biregular(const Morphism& phi, int depth = 8) {
  if (!phi.target().flags().assert_factorial)
    throw PreconditionError("biregular: target is not asserted factorial");
  bool inj = injective(phi);
  SurjectivityReport surj = almost_surjective(phi, depth);
  InverseAttempt inv = construct_inverse(phi);
  Verdict v;
  if (!inj || surj.almost_surjective == Verdict::no)
    v = Verdict::no;
  else if (surj.almost_surjective == Verdict::unknown)
    v = Verdict::unknown;
  else
    v = Verdict::yes;
  bool consistent = v == Verdict::unknown || (v == Verdict::yes) == inv.inverse.has_value();
  return BiregularReport{inj, std::move(surj), std::move(inv), v, consistent};
}

}  // namespace polymap
