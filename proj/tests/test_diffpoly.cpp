#include <gtest/gtest.h>

#include "printers.hpp"

#include "wsuper/builtins.hpp"
#include "wsuper/properties.hpp"
#include "wsuper/text.hpp"

using namespace wsuper;

namespace {

SpacePtr sp() {
  static SpacePtr s = make_space("test", {"a", "b", "x", "y"}, {1, 1, 0, 0});
  return s;
}
DiffPoly S(const char* n, unsigned o = 0) { return DiffPoly::symbol(sp(), n, o); }
DiffPoly P(const char* text) { return parse_poly(sp(), text); }

}  // namespace

TEST(Scalar, LaurentArithmetic) {
  Scalar k = Scalar::k();
  EXPECT_EQ(k * (Scalar(1) / k), Scalar(1));
  EXPECT_EQ((k + 1) * (k - 1), k * k - 1);
  EXPECT_EQ(((k + 2) / (k * 2)).eval(Rational(4)), Rational(3, 4));
  EXPECT_THROW(Scalar(1) / (k + 1), NonMonomialDivision);
  EXPECT_EQ(Scalar::monomial(Rational(1, 2), -1).str(), "(1/2)·k^-1");
  EXPECT_EQ((k - Scalar(Rational(1, 2))).str(), "(-1/2 + k)");
  EXPECT_THROW(k.constant_value(), Error);
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("7"), 7);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
}

TEST(DiffPoly, KoszulSigns) {
  EXPECT_EQ(S("a") * S("b"), -(S("b") * S("a")));
  EXPECT_TRUE((S("a") * S("a")).is_zero());
  EXPECT_FALSE((S("a") * S("a", 1)).is_zero());
  EXPECT_EQ(S("a") * S("x"), S("x") * S("a"));
  EXPECT_EQ(S("a") * S("b") * S("x"), S("x") * S("a") * S("b"));
  EXPECT_EQ(S("b") * S("x") * S("a"), -(S("a") * S("b") * S("x")));
  EXPECT_EQ((S("a") * S("b")).parity(), 0);
  EXPECT_EQ((S("a") * S("x")).parity(), 1);
}

TEST(DiffPoly, Derivation) {
  EXPECT_EQ(S("x").partial(2), S("x", 2));
  EXPECT_EQ((S("x") * S("x")).partial(), S("x") * S("x", 1) * Scalar(2));
  // ∂(ab) = ∂a b + a ∂b with a, b odd
  EXPECT_EQ((S("a") * S("b")).partial(), S("a", 1) * S("b") + S("a") * S("b", 1));
  // ∂(a ∂a) = a ∂²a since (∂a)² = 0
  EXPECT_EQ((S("a") * S("a", 1)).partial(), S("a") * S("a", 2));
  EXPECT_TRUE(DiffPoly(Scalar(3)).partial().is_zero());
}

TEST(DiffPoly, Substitution) {
  DiffPoly p = S("x") * S("a") + S("y", 1);
  DiffPoly q = p.substitute([&](Sym s) -> std::optional<DiffPoly> {
    if (sym_gen(s) == sp()->index("x") && sym_order(s) == 0) return S("y") + 1;
    return std::nullopt;
  });
  EXPECT_EQ(q, S("y") * S("a") + S("a") + S("y", 1));
  EXPECT_THROW(p.substitute([&](Sym s) -> std::optional<DiffPoly> {
    if (sym_parity(s) == 0) return S("a");
    return std::nullopt;
  }),
               ParityMismatch);
}

TEST(Text, ParseAndPrint) {
  EXPECT_EQ(P("x·a - 1/2·∂(y)"), S("x") * S("a") - S("y", 1) * Scalar(Rational(1, 2)));
  EXPECT_EQ(P("∂^2(x)^2"), S("x", 2) * S("x", 2));
  EXPECT_EQ(P("(1 + k)·x"), S("x") * (Scalar::k() + 1));
  EXPECT_EQ(P("b·a"), -P("a·b"));
  EXPECT_EQ(P("2·x - 2·x"), DiffPoly(sp()));
  EXPECT_EQ(P("1/2·x").str(), "(1/2)·x");
  EXPECT_EQ(P("-x - ∂(a)·b").str(), "-∂(a)·b - x");
  EXPECT_EQ(parse_lambda(sp(), "λ^2·x - λ").str(), "-λ + λ^2·x");
  EXPECT_THROW(P("x +"), ParseError);
  EXPECT_THROW(P("z"), ParseError);
  EXPECT_THROW(P("x)"), ParseError);
}

TEST(DiffPoly, MixedSpacesRejected) {
  auto other = make_space("other", {"x"}, {0});
  EXPECT_THROW(S("x") + DiffPoly::symbol(other, "x"), MixedSpaces);
  EXPECT_EQ(S("x") + 1, P("x + 1"));
}

TEST(Properties, RandomAxiomsRationalCoefficients) {
  auto r = check_diffpoly_axioms(builtin("spo(2|3)")->space(), 11, 1000);
  EXPECT_GE(r.checked, 1000u);
  EXPECT_TRUE(r.ok()) << r.violations.front();
}

TEST(Properties, RandomAxiomsLaurentCoefficients) {
  RandomSpec spec;
  spec.symbolic_coefficients = true;
  auto r = check_diffpoly_axioms(sp(), 12, 1000, spec);
  EXPECT_GE(r.checked, 1000u);
  EXPECT_TRUE(r.ok()) << r.violations.front();
}
