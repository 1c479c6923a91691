#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "polymap/errors.hpp"
#include "polymap/poly.hpp"

namespace polymap {

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := ('+'|'-') factor | base ['^' integer]
// base   := integer ['/' integer] | identifier | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, const VarContext& ctx) : text_(text), ctx_(ctx) {}

  Poly parse() {
    skip_ws();
    if (at_end()) fail("empty expression");
    Poly p = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_ws();
      if (at_end()) return acc;
      char c = text_[pos_];
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      skip_ws();
      if (at_end() || text_[pos_] != '*') return acc;
      ++pos_;
      acc *= factor();
    }
  }

  Poly factor() {
    skip_ws();
    if (at_end()) fail("expected operand");
    if (text_[pos_] == '-') {
      ++pos_;
      return -factor();
    }
    if (text_[pos_] == '+') {
      ++pos_;
      return factor();
    }
    Poly b = base();
    skip_ws();
    if (!at_end() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be a nonnegative integer literal");
      std::string digits = read_digits();
      if (digits.size() > 6) fail_at("exponent too large", start);
      b = pow(b, static_cast<unsigned>(std::stoul(digits)));
    }
    return b;
  }

  Poly base() {
    skip_ws();
    if (at_end()) fail("expected operand");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      skip_ws();
      if (!at_end() && text_[pos_] == '/') {
        std::size_t slash = pos_;
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail_at("division is only allowed between integer literals", slash);
        std::string den = read_digits();
        Integer d(den);
        if (d == 0) fail_at("division by zero", slash);
        Rational q{Integer(num), d};
        q.canonicalize();
        return Poly::constant(ctx_, q);
      }
      return Poly::constant(ctx_, Rational(Integer(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                           text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ctx_.index_of(name);
      if (!idx) fail_at("unknown variable '" + std::string(name) + "'", start);
      return Poly::variable(ctx_, *idx);
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_ws();
      if (at_end() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '/') fail("division is only allowed between integer literals");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const {
    throw ParseError(msg, pos);
  }

  std::string_view text_;
  const VarContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial over `ctx`. Throws ParseError on malformed input or
/// unknown variables.
inline Poly parse(std::string_view text, const VarContext& ctx) {
  return detail::PolyParser(text, ctx).parse();
}

}  // namespace polymap
