#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "polymap/biregular.hpp"
#include "polymap/cli/report.hpp"
#include "polymap/fixtures.hpp"
#include "polymap/interpolation.hpp"
#include "polymap/jacobian.hpp"
#include "polymap/session.hpp"

namespace polymap::cli {

struct Options {
  std::string session_file;
  std::string fixture;
  std::string format = "json";
  std::string on = "source";
  std::string order;
  std::optional<int> depth;
  double timeout = 0;
  bool timings = false;
  std::string f, g;
  std::vector<std::string> vars;
  bool closure = false, constructible = false;
  std::string report_file;
  std::string show;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const char* bool_text(bool b) { return b ? "true" : "false"; }

inline const Ideal& chosen_ideal(const Morphism& m, const std::string& on) {
  return on == "target" ? m.target().ideal() : m.source().ideal();
}

inline Poly require_poly(const std::string& text, const VarContext& ctx, const char* flag) {
  if (text.empty()) throw std::invalid_argument(std::string("missing required option ") + flag);
  return parse(text, ctx);
}

inline std::vector<Poly> parse_all(const Json& cert) {
  std::vector<std::string> names = cert.at("ring").get<std::vector<std::string>>();
  VarContext ctx(names);
  std::vector<Poly> out;
  for (const auto& v : cert.at("value")) out.push_back(parse(v.get<std::string>(), ctx));
  return out;
}

inline void add_inverse(Report& r, const Morphism& m, std::span<const Poly> psi) {
  r.certificate("inverse", m.target().ambient(), psi);
  std::vector<Poly> back, forth;
  for (std::size_t j = 0; j < psi.size(); ++j)
    back.push_back(normal_form(substitute(psi[j], m.coords()), m.source().ideal()));
  for (const auto& c : m.coords()) forth.push_back(normal_form(substitute(c, psi), m.target().ideal()));
  r.certificate("inverse_after_map", m.source().ambient(), back);
  r.certificate("map_after_inverse", m.target().ambient(), forth);
}

/// Re-derives the identities behind a report's certificates from the report
/// alone.
inline Report verify(const Json& report) {
  Session s = parse_session(report.at("session").get<std::string>());
  Morphism m = s.morphism();
  const std::string command = report.at("command").get<std::string>();
  const Json& input = report.at("input");
  auto cert = [&](const std::string& name) -> const Json* {
    for (const auto& c : report.at("certificates"))
      if (c.at("name") == name) return &c;
    return nullptr;
  };
  auto input_poly = [&](const char* key, const VarContext& ctx) {
    return parse(input.at(key).get<std::string>(), ctx);
  };
  const auto& src = m.source().ambient();
  const auto& tgt = m.target().ambient();
  Json checked = Json::array();
  bool ok = true;
  auto check = [&](const std::string& what, bool passed) {
    checked.push_back(Json{{"check", what}, {"passed", passed}});
    ok = ok && passed;
  };

  if (const Json* c = cert("interpolant")) {
    Poly p = parse_all(*c).at(0);
    Poly g = input_poly(command == "extend" ? "composite" : "g", src);
    check("interpolant pulls back to g", member(substitute(p, m.coords()) - g, m.source().ideal()));
  }
  if (const Json* c = cert("inverse")) {
    auto psi = parse_all(*c);
    bool left = psi.size() == src.size(), right = left, into = left;
    for (std::size_t j = 0; left && j < psi.size(); ++j)
      left = member(substitute(psi[j], m.coords()) - Poly::variable(src, j), m.source().ideal());
    for (std::size_t i = 0; right && i < tgt.size(); ++i)
      right = member(substitute(m.coords()[i], psi) - Poly::variable(tgt, i), m.target().ideal());
    for (const auto& h : m.source().ideal().generators())
      into = into && member(substitute(h, psi), m.target().ideal());
    check("inverse after map is the identity", left);
    check("map after inverse is the identity", right);
    check("inverse maps the target into the source", into);
  }
  if (const Json* c = cert("relation")) {
    Poly q = parse_all(*c).at(0);
    std::vector<Poly> values(m.coords().begin(), m.coords().end());
    values.push_back(input_poly("g", src));
    check("relation vanishes on the graph", member(substitute(q, values), m.source().ideal()));
  }
  if (const Json* num = cert("numerator"); num && cert("denominator")) {
    Poly a = parse_all(*num).at(0), b = parse_all(*cert("denominator")).at(0);
    Poly g = input_poly("g", src);
    check("g times denominator equals numerator",
          member(substitute(b, m.coords()) * g - substitute(a, m.coords()), m.source().ideal()));
  }
  if (const Json* c = cert("image_closure")) {
    bool all = true;
    for (const auto& e : parse_all(*c)) all = all && member(substitute(e, m.coords()), m.source().ideal());
    check("image closure equations vanish on the image", all);
  }
  if (const Json* c = cert("groebner_basis")) {
    auto basis = parse_all(*c);
    const Ideal& i = chosen_ideal(m, input.value("on", "source"));
    check("basis generates the ideal", equal(Ideal(i.context(), basis), i));
  }
  if (const Json* c = cert("normal_form"); c && command == "nf") {
    Poly r = parse_all(*c).at(0);
    const Ideal& i = chosen_ideal(m, input.value("on", "source"));
    check("f minus normal form lies in the ideal", member(input_poly("f", i.context()) - r, i));
  }
  if (const Json* c = cert("jacobian_det")) {
    check("jacobian determinant recomputed", parse_all(*c).at(0) == jacobian_det(Endomorphism(m)));
  }

  Report r;
  r.command = "verify";
  r.verdict = checked.empty() ? "nothing_to_check" : bool_text(ok);
  r.details["verified_command"] = command;
  r.details["checks"] = checked;
  r.session = report.at("session").get<std::string>();
  return r;
}

inline Report execute(const std::string& cmd, const Options& o, const Session& s) {
  Morphism m = s.morphism();
  const int depth = o.depth.value_or(s.depth);
  const auto& src = m.source().ambient();
  const auto& tgt = m.target().ambient();
  Report r;
  r.command = cmd;
  r.session = s.to_text();

  if (cmd == "gb" || cmd == "dim" || cmd == "nf" || cmd == "eliminate") {
    if (o.on != "source" && o.on != "target") throw std::invalid_argument("--on must be source or target");
    r.input["on"] = o.on;
    const Ideal& ideal = chosen_ideal(m, o.on);
    const auto& ctx = ideal.context();
    r.verdict = "computed";
    if (cmd == "gb") {
      MonomialOrder ord = o.order.empty() ? s.order_value() : Session::parse_order(o.order);
      r.input["order"] = ord.name();
      r.certificate("groebner_basis", ctx, ideal.groebner(ord));
    } else if (cmd == "dim") {
      r.details["dimension"] = dimension(ideal);
    } else if (cmd == "nf") {
      r.input["f"] = o.f;
      r.certificate("normal_form", ctx, normal_form(require_poly(o.f, ctx, "-f"), ideal));
    } else {
      std::vector<std::size_t> drop;
      for (const auto& v : o.vars) {
        auto idx = ctx.index_of(v);
        if (!idx) throw std::invalid_argument("eliminate: unknown variable '" + v + "'");
        drop.push_back(*idx);
      }
      r.input["vars"] = o.vars;
      r.certificate("elimination_ideal", ctx, eliminate(ideal, drop).groebner());
    }
    return r;
  }

  if (cmd == "image") {
    if (o.constructible) {
      auto img = constructible_image(m, depth);
      r.input["mode"] = "constructible";
      r.exact = img.exact();
      r.verdict = img.exact() ? "computed" : "unknown";
      r.details["pieces"] = constructible_json(img);
    } else {
      r.input["mode"] = "closure";
      r.verdict = "computed";
      r.certificate("image_closure", tgt, image_closure(m).groebner());
    }
    return r;
  }

  if (cmd == "almost-surjective") {
    auto rep = almost_surjective(m, depth);
    r.exact = rep.exact;
    r.verdict = to_string(rep.almost_surjective);
    r.certificate("complement_closure", tgt, rep.complement_closure.groebner());
    r.details["surjective"] = to_string(rep.surjective);
    r.details["complement_dim"] = rep.complement_dim;
    r.details["target_dim"] = rep.target_dim;
    r.details["image"] = constructible_json(rep.image);
    r.details["complement"] = constructible_json(rep.complement);
    return r;
  }

  if (cmd == "determined") {
    r.input["g"] = o.g;
    r.verdict = bool_text(determined_by(m, require_poly(o.g, src, "-g")));
    return r;
  }

  auto interpolation = [&](const InterpolationResult& res) {
    r.verdict = to_string(res.status);
    if (res.interpolant) r.certificate("interpolant", tgt, *res.interpolant);
    r.certificate("normal_form", m.graph_context(), res.normal_form);
  };

  if (cmd == "interpolate") {
    r.input["g"] = o.g;
    interpolation(interpolate(m, require_poly(o.g, src, "-g"), true));
    return r;
  }

  if (cmd == "extend") {
    r.input["composite"] = o.g;
    auto res = extend(m, require_poly(o.g, src, "-g"));
    interpolation(res.result);
    r.details["unique"] = res.unique;
    return r;
  }

  if (cmd == "minpoly") {
    r.input["g"] = o.g;
    auto res = minimal_polynomial(m, require_poly(o.g, src, "-g"));
    r.verdict = to_string(res.status);
    if (res.relation) {
      r.certificate("relation", res.relation->context(), *res.relation);
      r.details["degree"] = res.degree;
    }
    if (res.rational) {
      r.certificate("numerator", tgt, res.rational->first);
      r.certificate("denominator", tgt, res.rational->second);
    }
    if (res.graph) r.certificate("graph_closure", res.graph->context(), res.graph->groebner());
    return r;
  }

  if (cmd == "divides") {
    r.input["f"] = o.f;
    r.input["g"] = o.g;
    auto res = divides_transfer(m, require_poly(o.f, tgt, "-f"), require_poly(o.g, tgt, "-g"));
    r.verdict = res.witnesses_failure() ? "witness" : "no_witness";
    r.details["source_divides"] = res.source_divides;
    r.details["target_divides"] = res.target_divides;
    return r;
  }

  if (cmd == "injective") {
    r.verdict = bool_text(injective(m));
    return r;
  }

  if (cmd == "biregular") {
    auto res = biregular(m, depth);
    r.exact = res.surjectivity.exact;
    r.verdict = to_string(res.verdict);
    r.details["injective"] = res.injective;
    r.details["almost_surjective"] = to_string(res.surjectivity.almost_surjective);
    r.details["consistent"] = res.consistent;
    if (res.inverse.failing_coordinate) r.details["failing_coordinate"] = src.name(*res.inverse.failing_coordinate);
    if (res.inverse.inverse) add_inverse(r, m, *res.inverse.inverse);
    return r;
  }

  if (cmd == "etale" || cmd == "invert" || cmd == "jc") {
    Endomorphism e(m);
    if (cmd == "etale") {
      Poly d = jacobian_det(e);
      r.certificate("jacobian_det", src, d);
      r.verdict = bool_text(d.is_constant() && !d.is_zero());
    } else if (cmd == "invert") {
      auto inv = invert(e);
      r.verdict = bool_text(inv.inverse.has_value());
      if (inv.failing_coordinate) r.details["failing_coordinate"] = src.name(*inv.failing_coordinate);
      if (inv.inverse) add_inverse(r, m, *inv.inverse);
    } else {
      auto jc = jc_criteria(e);
      bool all = jc.injective == Verdict::yes && jc.invertible &&
                 std::all_of(jc.coords_determined.begin(), jc.coords_determined.end(), [](bool b) { return b; });
      r.verdict = !jc.consistent ? "inconsistent" : bool_text(all);
      r.details["etale"] = jc.etale;
      r.details["injective"] = to_string(jc.injective);
      r.details["coords_determined"] = jc.coords_determined;
      r.details["invertible"] = jc.invertible;
      r.details["consistent"] = jc.consistent;
      if (jc.inverse) add_inverse(r, m, *jc.inverse);
    }
    return r;
  }

  if (cmd == "dichotomy") {
    auto res = etale_dichotomy(m, s.assert_etale, depth);
    r.exact = res.surjectivity.exact;
    r.verdict = to_string(res.branch);
    r.certificate("complement_closure", tgt, res.surjectivity.complement_closure.groebner());
    r.details["codimension"] = res.codimension;
    r.details["complement_dim"] = res.surjectivity.complement_dim;
    r.details["target_dim"] = res.surjectivity.target_dim;
    if (res.biregular && res.biregular->inverse.inverse) add_inverse(r, m, *res.biregular->inverse.inverse);
    return r;
  }

  throw std::invalid_argument("unknown command '" + cmd + "'");
}

/// Requests a stop on `source` after `seconds` unless destroyed first.
class Watchdog {
 public:
  Watchdog(std::stop_source source, double seconds) {
    if (seconds <= 0) return;
    thread_ = std::jthread([source, seconds](std::stop_token st) mutable {
      std::mutex mu;
      std::condition_variable_any cv;
      std::unique_lock lock(mu);
      cv.wait_for(lock, st, std::chrono::duration<double>(seconds), [] { return false; });
      if (!st.stop_requested()) source.request_stop();
    });
  }

 private:
  std::jthread thread_;
};

}  // namespace detail

inline int exit_code_for(const std::string& verdict) {
  if (verdict == "unknown") return 2;
  if (verdict == "inconsistent") return 1;
  return 0;
}

/// Entry point shared by the executable and the in-process tests. `args`
/// excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact analysis of polynomial maps between affine varieties"};
  app.name("polymap");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--session", o.session_file, "Session file");
  app.add_option("--fixture", o.fixture, "Built-in session name");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--depth", o.depth, "Recursion depth for image computations")->check(CLI::PositiveNumber);
  app.add_option("--timeout", o.timeout, "Give up after this many seconds (verdict unknown)");
  app.add_flag("--timings", o.timings, "Include wall-clock timings in the report");

  auto with_on = [&](CLI::App* sub) {
    sub->add_option("--on", o.on, "Ideal to use")->check(CLI::IsMember({"source", "target"}));
  };
  auto* gb = app.add_subcommand("gb", "Reduced Groebner basis");
  with_on(gb);
  gb->add_option("--order", o.order, "lex, grlex, grevlex or block(k)");
  with_on(app.add_subcommand("dim", "Krull dimension"));
  auto* nf = app.add_subcommand("nf", "Normal form");
  with_on(nf);
  nf->add_option("-f", o.f)->required();
  auto* elim = app.add_subcommand("eliminate", "Elimination ideal");
  with_on(elim);
  elim->add_option("-v,--vars", o.vars, "Variables to eliminate")->required();
  auto* image = app.add_subcommand("image", "Image closure or constructible image");
  auto* closure_flag = image->add_flag("--closure", o.closure);
  image->add_flag("--constructible", o.constructible)->excludes(closure_flag);
  app.add_subcommand("almost-surjective", "Almost surjectivity report");
  app.add_subcommand("determined", "Is g constant on fibers")->add_option("-g", o.g)->required();
  app.add_subcommand("interpolate", "Write g as p composed with the map")->add_option("-g", o.g)->required();
  app.add_subcommand("minpoly", "Minimal polynomial of g over the image")->add_option("-g", o.g)->required();
  auto* div = app.add_subcommand("divides", "Divisibility transfer");
  div->add_option("-f", o.f)->required();
  div->add_option("-g", o.g)->required();
  app.add_subcommand("extend", "Extend a function given by its composite")->add_option("-g", o.g)->required();
  app.add_subcommand("injective", "Geometric injectivity");
  app.add_subcommand("biregular", "Biregularity with inverse construction");
  app.add_subcommand("etale", "Jacobian determinant of an endomorphism");
  app.add_subcommand("invert", "Inverse of an endomorphism");
  app.add_subcommand("jc", "Equivalent criteria for an etale endomorphism");
  app.add_subcommand("dichotomy", "Codimension-one-or-biregular check");
  app.add_subcommand("verify", "Re-check the certificates of a JSON report")
      ->add_option("report", o.report_file)->required();
  app.add_subcommand("fixtures", "List built-in sessions")->add_option("--show", o.show, "Print one session");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    if (cmd == "fixtures") {
      if (!o.show.empty())
        out << fixture(o.show).to_text();
      else
        for (const auto& n : fixture_names()) out << n << "\n";
      return 0;
    }

    auto t0 = std::chrono::steady_clock::now();
    Report report;
    if (cmd == "verify") {
      report = detail::verify(Json::parse(detail::read_file(o.report_file)));
    } else {
      if (o.session_file.empty() == o.fixture.empty())
        throw std::invalid_argument("exactly one of --session or --fixture is required");
      Session s = o.fixture.empty() ? parse_session(detail::read_file(o.session_file)) : fixture(o.fixture);
      std::stop_source stop;
      detail::Watchdog dog(stop, o.timeout);
      CancelScope scope(stop.get_token());
      try {
        report = detail::execute(cmd, o, s);
      } catch (const Cancelled&) {
        report = Report{};
        report.command = cmd;
        report.verdict = "unknown";
        report.exact = false;
        report.details["reason"] = "timeout";
        report.session = s.to_text();
      }
    }
    if (o.timings)
      report.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (o.format == "text")
      out << render_text(report);
    else
      out << report.to_json().dump(2) << "\n";
    if (cmd == "verify" && report.verdict == "false") return 1;
    return exit_code_for(report.verdict);
  } catch (const CertificateFailure& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace polymap::cli
