#include <polymap/parse.hpp>
#include <polymap/poly.hpp>

#include <gtest/gtest.h>

#include "support/random.hpp"

using namespace polymap;

namespace {

const VarContext xy{"x", "y"};

Poly P(const char* text, const VarContext& ctx = xy) { return parse(text, ctx); }

}  // namespace

TEST(VarContext, RejectsBadNames) {
  EXPECT_THROW(VarContext({"x", "x"}), std::invalid_argument);
  EXPECT_THROW(VarContext({"1x"}), std::invalid_argument);
  EXPECT_THROW(VarContext({""}), std::invalid_argument);
  EXPECT_NO_THROW(VarContext({"x'", "y_2", "Z"}));
}

TEST(VarContext, FreshNames) {
  VarContext c{"s", "s_", "t"};
  EXPECT_EQ(c.fresh_name("s"), "s__");
  EXPECT_EQ(c.extended("t").name(3), "t_");
}

TEST(MonomialOrder, Grevlex) {
  const auto ord = MonomialOrder::grevlex();
  // x*z < y^2 in grevlex (z has the higher exponent), the classic separator from lex.
  Monomial xz({1, 0, 1}), yy({0, 2, 0});
  EXPECT_TRUE(ord.less(xz, yy));
  EXPECT_TRUE(MonomialOrder::lex().greater(xz, yy));
  EXPECT_TRUE(MonomialOrder::grlex().greater(xz, yy));
}

TEST(MonomialOrder, BlockEliminates) {
  const auto ord = MonomialOrder::block(1);
  Monomial t({1, 0, 0}), big({0, 5, 7});
  EXPECT_TRUE(ord.greater(t, big));
}

TEST(MonomialOrder, CompatibleWithMultiplication) {
  proptest::Gen gen(7);
  const MonomialOrder orders[] = {MonomialOrder::lex(), MonomialOrder::grlex(),
                                  MonomialOrder::grevlex(), MonomialOrder::block(2)};
  auto random_monomial = [&] {
    std::vector<int> e(4);
    for (auto& x : e) x = gen.integer(0, 3);
    return Monomial(e);
  };
  for (const auto& ord : orders) {
    for (int k = 0; k < 200; ++k) {
      Monomial u = random_monomial(), v = random_monomial(), w = random_monomial();
      int c = ord.compare(u, v);
      EXPECT_EQ(c, ord.compare(u * w, v * w)) << ord.name();
      EXPECT_FALSE(ord.less(u * w, u));
    }
  }
}

TEST(Parse, Basic) {
  Poly p = P("x^2*y - 3");
  ASSERT_EQ(p.term_count(), 2u);
  EXPECT_EQ(p.terms()[0].monomial, Monomial({2, 1}));
  EXPECT_EQ(p.terms()[0].coeff, 1);
  EXPECT_EQ(p.terms()[1].monomial, Monomial({0, 0}));
  EXPECT_EQ(p.terms()[1].coeff, -3);
}

TEST(Parse, CuspCoordinate) {
  VarContext t{"t"};
  Poly p = parse("t^2", t);
  EXPECT_EQ(p, pow(Poly::variable(t, 0), 2));
}

TEST(Parse, IdentityCancelsToZero) {
  EXPECT_TRUE(P("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
}

TEST(Parse, RationalLiteralsAndUnaryMinus) {
  EXPECT_EQ(P("-1/2*x + 3/6"), Poly::variable(xy, 0) * Rational(-1, 2) + Poly::constant(xy, Rational(1, 2)));
  EXPECT_EQ(P("x*-y"), -(Poly::variable(xy, 0) * Poly::variable(xy, 1)));
  EXPECT_EQ(P("-x^2"), -pow(Poly::variable(xy, 0), 2));
}

TEST(Parse, Errors) {
  try {
    P("x + z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P("x / y"), ParseError);
  EXPECT_THROW(P("y/x"), ParseError);
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("(x"), ParseError);
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("x y"), ParseError);
  EXPECT_THROW(P("x^-1"), ParseError);
}

TEST(Print, CanonicalFormat) {
  EXPECT_EQ(to_string(P("3 - x^2*y + 1/2*x")), "-x^2*y + 1/2*x + 3");
  EXPECT_EQ(to_string(P("0*x")), "0");
  EXPECT_EQ(to_string(P("-x")), "-x");
  VarContext uv{"u", "v"};
  EXPECT_EQ(to_string(parse("u - v^2", uv)), "-v^2 + u");
}

TEST(Print, RoundTripProperty) {
  proptest::Gen gen(11);
  VarContext ctx{"a", "b", "c"};
  for (int k = 0; k < 300; ++k) {
    Poly f = gen.poly(ctx, 5, 8, 9, 4);
    EXPECT_EQ(parse(to_string(f), ctx), f) << to_string(f);
  }
}

TEST(Arith, Examples) {
  EXPECT_EQ(P("(x+y)*(x-y)"), P("x^2 - y^2"));
  EXPECT_TRUE((P("x^3 + y") * Poly(xy)).is_zero());
  // Hand expansion of (x + y^2)^2.
  Poly expected = Poly::from_terms(xy, {{Monomial({2, 0}), 1}, {Monomial({1, 2}), 2}, {Monomial({0, 4}), 1}});
  EXPECT_EQ(pow(P("x + y^2"), 2), expected);
  EXPECT_THROW(P("x") + parse("x", VarContext{"x"}), ContextMismatch);
}

TEST(Arith, RingAxiomsProperty) {
  proptest::Gen gen(3);
  VarContext ctx{"x", "y", "z"};
  for (int k = 0; k < 150; ++k) {
    Poly a = gen.poly(ctx, 3, 5, 5, 3), b = gen.poly(ctx, 3, 5, 5, 3), c = gen.poly(ctx, 3, 5, 5, 3);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(pow(a, 3), a * a * a);
  }
}

TEST(Substitute, Examples) {
  VarContext uv{"u", "v"}, t{"t"};
  Poly tt = Poly::variable(t, 0);
  // u^3 - v^2 at (t^2, t^3): t^6 - t^6.
  EXPECT_TRUE(substitute(parse("u^3 - v^2", uv), {pow(tt, 2), pow(tt, 3)}).is_zero());
  EXPECT_EQ(substitute(parse("u", uv), {P("x"), P("x*y")}), P("x"));
  EXPECT_THROW(substitute(parse("u", uv), {P("x")}), std::invalid_argument);
}

TEST(Substitute, HomomorphismProperty) {
  proptest::Gen gen(5);
  VarContext uv{"u", "v"};
  VarContext ctx{"x", "y", "z"};
  for (int k = 0; k < 100; ++k) {
    Poly f = gen.poly(uv, 3, 4, 4, 2), g = gen.poly(uv, 3, 4, 4, 2);
    std::vector<Poly> a{gen.poly(ctx, 2, 3), gen.poly(ctx, 2, 3)};
    EXPECT_EQ(substitute(f + g, a), substitute(f, a) + substitute(g, a));
    EXPECT_EQ(substitute(f * g, a), substitute(f, a) * substitute(g, a));
  }
}

TEST(Derivative, Examples) {
  VarContext wuv{"w", "u", "v"};
  EXPECT_EQ(derivative(parse("w^2 - u", wuv), "w"), parse("2*w", wuv));
  EXPECT_TRUE(derivative(parse("u^3 - v^2", wuv), "w").is_zero());
  EXPECT_EQ(derivative(P("x + y^2"), "x"), P("1"));
  EXPECT_THROW(derivative(P("x"), "q"), std::invalid_argument);
}

TEST(Derivative, LeibnizProperty) {
  proptest::Gen gen(13);
  for (int k = 0; k < 100; ++k) {
    Poly f = gen.poly(xy, 4, 5, 5, 2), g = gen.poly(xy, 4, 5, 5, 2);
    EXPECT_EQ(derivative(f * g, 0), derivative(f, 0) * g + f * derivative(g, 0));
  }
}

TEST(Evaluate, Examples) {
  VarContext uv{"u", "v"};
  EXPECT_EQ(evaluate(parse("u^3 - v^2", uv), std::vector<Rational>{4, 8}), 0);
  EXPECT_EQ(evaluate(P("x^2 + 7*y - 5"), std::vector<Rational>{0, 0}), -5);
  EXPECT_EQ(evaluate(P("x*y"), std::vector<Rational>{2, 3}), 6);
  EXPECT_THROW(evaluate(P("x"), std::vector<Rational>{1}), std::invalid_argument);
}

TEST(Evaluate, AgreesWithSubstitution) {
  proptest::Gen gen(17);
  VarContext none{"c"};
  for (int k = 0; k < 100; ++k) {
    Poly f = gen.poly(xy, 4, 6, 5, 3);
    auto pt = gen.point(2);
    Poly s = substitute(f, {Poly::constant(none, pt[0]), Poly::constant(none, pt[1])});
    EXPECT_TRUE(s.is_constant());
    EXPECT_EQ(s.constant_term(), evaluate(f, pt));
  }
}

// (f(x) - f(a)) / (x - a) evaluated at a equals f'(a), using exact
// synthetic division.
TEST(Derivative, SyntheticDivisionConsistency) {
  proptest::Gen gen(19);
  VarContext x{"x"};
  for (int k = 0; k < 100; ++k) {
    Poly f = gen.poly(x, 6, 6, 7, 3);
    Rational a = gen.rational(5, 4);
    Poly numerator = f - Poly::constant(x, evaluate(f, std::vector<Rational>{a}));
    Poly linear = Poly::variable(x, 0) - Poly::constant(x, a);
    auto q = divide_exact(numerator, linear);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(evaluate(*q, std::vector<Rational>{a}), evaluate(derivative(f, 0), std::vector<Rational>{a}));
  }
}

TEST(DivideExact, RejectsNonMultiples) {
  EXPECT_EQ(divide_exact(P("x^2 - y^2"), P("x - y")), P("x + y"));
  EXPECT_FALSE(divide_exact(P("x^2 + y"), P("x")).has_value());
}
