#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polymap/morphism.hpp"
#include "polymap/parse.hpp"

namespace polymap {

/// A morphism problem as line-oriented `key: value` text.
///
///   source_ring: x y
///   source_ideal: <poly> ; <poly>
///   target_ring: u v
///   target_ideal: <poly> ; ...
///   map: u = x ; v = x*y
///   assert_factorial: true
///
/// Also assert_irreducible, assert_etale, depth and order. Blank lines and
/// `#` comments are ignored.
struct Session {
  std::vector<std::string> source_ring, target_ring;
  std::vector<std::string> source_ideal, target_ideal;  // polynomial texts
  std::vector<std::pair<std::string, std::string>> map;  // target var, poly text
  bool assert_factorial = false;
  bool assert_irreducible = false;
  bool assert_etale = false;
  int depth = 8;
  std::string order = "grevlex";

  VarContext source_context() const { return VarContext(source_ring); }
  VarContext target_context() const { return VarContext(target_ring); }

  Ideal source_ideal_value() const { return make_ideal(source_context(), source_ideal); }
  Ideal target_ideal_value() const { return make_ideal(target_context(), target_ideal); }

  MonomialOrder order_value() const { return parse_order(order); }

  /// Builds and checks the morphism. Target ring defaults to one variable
  /// per map entry, in map order.
  Morphism morphism() const {
    VarContext src = source_context(), tgt = target_context();
    std::vector<std::optional<Poly>> coords(tgt.size());
    for (const auto& [var, text] : map) {
      auto idx = tgt.index_of(var);
      if (!idx) throw ParseError("map assigns '" + var + "', which is not a target variable", 0);
      if (coords[*idx]) throw ParseError("map assigns '" + var + "' twice", 0);
      coords[*idx] = parse(text, src);
    }
    std::vector<Poly> c;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!coords[i]) throw ParseError("map does not assign target variable '" + tgt.name(i) + "'", 0);
      c.push_back(*coords[i]);
    }
    VarietyFlags sflags{assert_irreducible, false};
    VarietyFlags tflags{false, assert_factorial};
    return Morphism(AffineVariety(source_ideal_value(), sflags), AffineVariety(target_ideal_value(), tflags),
                    std::move(c));
  }

  /// Canonical text; parse_session(to_text()) reproduces the session.
  std::string to_text() const {
    auto join = [](const std::vector<std::string>& v, std::string_view sep) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(sep) : "") + v[i];
      return out;
    };
    std::vector<std::string> entries;
    for (const auto& [var, text] : map) entries.push_back(var + " = " + text);
    std::ostringstream os;
    os << "source_ring: " << join(source_ring, " ") << "\n";
    if (!source_ideal.empty()) os << "source_ideal: " << join(source_ideal, " ; ") << "\n";
    os << "target_ring: " << join(target_ring, " ") << "\n";
    if (!target_ideal.empty()) os << "target_ideal: " << join(target_ideal, " ; ") << "\n";
    os << "map: " << join(entries, " ; ") << "\n";
    if (assert_factorial) os << "assert_factorial: true\n";
    if (assert_irreducible) os << "assert_irreducible: true\n";
    if (assert_etale) os << "assert_etale: true\n";
    if (depth != 8) os << "depth: " << depth << "\n";
    if (order != "grevlex") os << "order: " << order << "\n";
    return os.str();
  }

  static Ideal make_ideal(const VarContext& ctx, const std::vector<std::string>& texts) {
    std::vector<Poly> gens;
    for (const auto& t : texts) gens.push_back(parse(t, ctx));
    return Ideal(ctx, std::move(gens));
  }

  static MonomialOrder parse_order(std::string_view text) {
    if (text == "lex") return MonomialOrder::lex();
    if (text == "grlex") return MonomialOrder::grlex();
    if (text == "grevlex") return MonomialOrder::grevlex();
    if (text.starts_with("block(") && text.ends_with(")")) {
      auto inner = text.substr(6, text.size() - 7);
      if (!inner.empty() && std::all_of(inner.begin(), inner.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return MonomialOrder::block(std::stoul(std::string(inner)));
    }
    throw ParseError("unknown monomial order '" + std::string(text) + "'", 0);
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ParseError("line " + std::to_string(line) + ": expected true or false, got '" + v + "'", 0);
}

}  // namespace detail

/// Parses session text. Polynomials are only parsed when the session is
/// turned into a morphism; structural errors are reported here with the
/// line number.
inline Session parse_session(std::string_view text) {
  Session s;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool have_target_ring = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string l = detail::trim(raw);
    if (l.empty()) continue;
    auto colon = l.find(':');
    if (colon == std::string::npos)
      throw ParseError("line " + std::to_string(line) + ": expected 'key: value'", 0);
    std::string key = detail::trim(l.substr(0, colon)), value = detail::trim(l.substr(colon + 1));
    if (seen.count(key)) throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key + "'", 0);
    seen[key] = line;
    auto ring = [&] {
      std::string v = value;
      std::replace(v.begin(), v.end(), ',', ' ');
      return detail::split(v, ' ');
    };
    if (key == "source_ring") {
      s.source_ring = ring();
    } else if (key == "target_ring") {
      s.target_ring = ring();
      have_target_ring = true;
    } else if (key == "source_ideal") {
      s.source_ideal = detail::split(value, ';');
    } else if (key == "target_ideal") {
      s.target_ideal = detail::split(value, ';');
    } else if (key == "map") {
      for (const auto& entry : detail::split(value, ';')) {
        auto eq = entry.find('=');
        if (eq == std::string::npos)
          throw ParseError("line " + std::to_string(line) + ": map entry '" + entry + "' lacks '='", 0);
        std::string var = detail::trim(entry.substr(0, eq)), poly = detail::trim(entry.substr(eq + 1));
        if (var.empty() || poly.empty())
          throw ParseError("line " + std::to_string(line) + ": malformed map entry '" + entry + "'", 0);
        s.map.emplace_back(var, poly);
      }
    } else if (key == "assert_factorial") {
      s.assert_factorial = detail::parse_bool(value, line);
    } else if (key == "assert_irreducible") {
      s.assert_irreducible = detail::parse_bool(value, line);
    } else if (key == "assert_etale") {
      s.assert_etale = detail::parse_bool(value, line);
    } else if (key == "depth") {
      try {
        std::size_t used = 0;
        s.depth = std::stoi(value, &used);
        if (used != value.size() || s.depth < 1) throw std::invalid_argument("depth");
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": depth must be a positive integer", 0);
      }
    } else if (key == "order") {
      Session::parse_order(value);
      s.order = value;
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'", 0);
    }
  }
  if (s.source_ring.empty()) throw ParseError("session has no source_ring", 0);
  if (s.map.empty()) throw ParseError("session has no map", 0);
  if (!have_target_ring)
    for (const auto& [var, text] : s.map) s.target_ring.push_back(var);
  return s;
}

}  // namespace polymap
