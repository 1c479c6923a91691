#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polymap/session.hpp"

namespace polymap {

/// Built-in sessions, loadable by name.
inline const std::vector<std::pair<std::string, std::string>>& fixture_texts() {
  static const std::vector<std::pair<std::string, std::string>> all = {
      {"cusp", "source_ring: t\ntarget_ring: u v\nmap: u = t^2 ; v = t^3\nassert_factorial: true\n"},
      {"shear", "source_ring: x y\ntarget_ring: u v\nmap: u = x ; v = x*y\nassert_factorial: true\n"},
      {"sl2row",
       "source_ring: a b c d\nsource_ideal: a*d - b*c - 1\ntarget_ring: u v\nmap: u = a ; v = b\n"
       "assert_factorial: true\nassert_irreducible: true\n"},
      {"hyperbola",
       "source_ring: x z\nsource_ideal: x*z - 1\ntarget_ring: u\nmap: u = x\nassert_factorial: true\n"
       "assert_irreducible: true\nassert_etale: true\n"},
      {"sym2", "source_ring: x y\ntarget_ring: u v\nmap: u = x + y ; v = x*y\nassert_factorial: true\n"},
      {"square", "source_ring: t\ntarget_ring: u\nmap: u = t^2\nassert_factorial: true\n"},
      {"identity1", "source_ring: t\ntarget_ring: u\nmap: u = t\nassert_factorial: true\nassert_etale: true\n"},
      {"identity2",
       "source_ring: x y\ntarget_ring: u v\nmap: u = x ; v = y\nassert_factorial: true\nassert_etale: true\n"},
      {"triangular",
       "source_ring: x y\ntarget_ring: u v\nmap: u = x + y^2 ; v = y\nassert_factorial: true\nassert_etale: true\n"},
      {"tame",
       "source_ring: x y\ntarget_ring: u v\nmap: u = x + y^2 ; v = y + (x + y^2)^3\nassert_factorial: true\n"
       "assert_etale: true\n"},
  };
  return all;
}

inline std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : fixture_texts()) names.push_back(name);
  return names;
}

inline Session fixture(std::string_view name) {
  for (const auto& [n, text] : fixture_texts())
    if (n == name) return parse_session(text);
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace polymap
