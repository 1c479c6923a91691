#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polymap {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "n" or "n/d" with optional sign. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("not a rational literal: " + std::string(text));
  q.canonicalize();
  return q;
}

}  // namespace polymap
