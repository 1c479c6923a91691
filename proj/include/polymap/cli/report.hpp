#pragma once

#include <json.hpp>

#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "polymap/ideal.hpp"
#include "polymap/image.hpp"
#include "polymap/poly.hpp"

namespace polymap::cli {

using Json = nlohmann::ordered_json;

inline Json ring_json(const VarContext& ctx) { return Json(std::vector<std::string>(ctx.names().begin(), ctx.names().end())); }

inline Json polys_json(std::span<const Poly> polys) {
  Json out = Json::array();
  for (const auto& p : polys) out.push_back(to_string(p));
  return out;
}

inline Json ideal_json(const Ideal& i) { return polys_json(i.groebner()); }

/// Machine-readable outcome of one command. Field order is fixed so that
/// equal runs serialize byte-identically.
struct Report {
  std::string command;
  std::string verdict;
  bool exact = true;
  Json certificates = Json::array();
  Json details = Json::object();
  Json input = Json::object();
  std::string session;
  std::optional<double> total_ms;

  void certificate(const std::string& name, const VarContext& ring, std::span<const Poly> value) {
    certificates.push_back(Json{{"name", name}, {"ring", ring_json(ring)}, {"value", polys_json(value)}});
  }
  void certificate(const std::string& name, const VarContext& ring, const Poly& value) {
    certificate(name, ring, std::span<const Poly>(&value, 1));
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["verdict"] = verdict;
    j["exact"] = exact;
    j["input"] = input;
    j["certificates"] = certificates;
    j["details"] = details;
    if (total_ms) j["timings"] = Json{{"total_ms", *total_ms}};
    j["session"] = session;
    return j;
  }
};

inline Json constructible_json(const ConstructibleSet& s) {
  Json pieces = Json::array();
  for (const auto& p : s.pieces())
    pieces.push_back(Json{{"closed", ideal_json(p.closed)}, {"minus", ideal_json(p.removed)}});
  return pieces;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "; " : "") + scalar_text(v[i]);
    return "[" + out + "]";
  }
  return v.dump();
}

inline void render_object(std::ostream& os, const Json& obj, const std::string& indent) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      os << indent << key << ":\n";
      render_object(os, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      os << indent << key << ":\n";
      for (const auto& item : value) {
        os << indent << "  -\n";
        render_object(os, item, indent + "    ");
      }
    } else {
      os << indent << key << ": " << scalar_text(value) << "\n";
    }
  }
}

}  // namespace detail

/// Human-readable rendering of the same data as the JSON report.
inline std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  os << "verdict: " << r.verdict << (r.exact ? "" : " (inexact)") << "\n";
  if (!r.input.empty()) detail::render_object(os, Json{{"input", r.input}}, "");
  for (const auto& c : r.certificates) {
    os << c["name"].get<std::string>() << " over " << detail::scalar_text(c["ring"]) << ":\n";
    for (const auto& v : c["value"]) os << "  " << v.get<std::string>() << "\n";
  }
  detail::render_object(os, r.details, "");
  if (r.total_ms) os << "time: " << *r.total_ms << " ms\n";
  return os.str();
}

}  // namespace polymap::cli
