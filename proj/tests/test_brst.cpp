#include <gtest/gtest.h>

#include "printers.hpp"

#include "wsuper/brst.hpp"
#include "wsuper/builtins.hpp"

using namespace wsuper;

namespace {

struct Case {
  const char* algebra;
  bool symbolic;
};

class BrstIdentities : public ::testing::TestWithParam<Case> {
 protected:
  BrstComplex complex() const {
    return build_brst(builtin(GetParam().algebra), GetParam().symbolic ? Scalar::k() : Scalar(1));
  }
};

void expect_ok(const CheckReport& r) {
  EXPECT_GT(r.checked, 0u) << r.name;
  EXPECT_TRUE(r.ok()) << r.name << ": " << r.violations.front();
}

}  // namespace

TEST_P(BrstIdentities, DSquaredVanishes) { expect_ok(check_d_squared(complex())); }
TEST_P(BrstIdentities, DOnGenerators) { expect_ok(check_d_formulas(complex())); }
TEST_P(BrstIdentities, DZeroOnJ) { expect_ok(check_d0_J(complex())); }
TEST_P(BrstIdentities, KBrackets) { expect_ok(check_K_brackets(complex())); }
TEST_P(BrstIdentities, JClosure) { expect_ok(check_J_closure(complex())); }
TEST_P(BrstIdentities, LAction) { expect_ok(check_L_action(complex())); }

INSTANTIATE_TEST_SUITE_P(Builtins, BrstIdentities,
                         ::testing::Values(Case{"sl(2)", true}, Case{"sl(2)", false}, Case{"spo(2|1)", true},
                                           Case{"spo(2|1)", false}, Case{"spo(2|3)", true}, Case{"spo(2|3)", false}),
                         [](const auto& info) {
                           std::string n = info.param.algebra;
                           std::string out;
                           for (char c : n)
                             if (std::isalnum(static_cast<unsigned char>(c))) out += c;
                           return out + (info.param.symbolic ? "_symbolic" : "_k1");
                         });

TEST(Brst, SpaceLayout) {
  auto c = build_brst(builtin("spo(2|1)"), Scalar::k());
  const auto& g = c.algebra();
  // currents, ghosts for g(>0), their duals and the neutral free superfermions on g(1/2)
  EXPECT_EQ(c.S().size(), 2u);
  EXPECT_EQ(c.S_half().size(), 1u);
  EXPECT_EQ(c.d().parity(), 1);
  EXPECT_EQ(c.space()->parity(c.phi_index(0)), 1 ^ g.parity(c.S()[0]));
}

TEST(Brst, DIsOddAndNotZero) {
  for (const auto& n : builtin_names()) {
    auto c = build_brst(builtin(n), Scalar(1));
    EXPECT_FALSE(c.d().is_zero());
    EXPECT_TRUE(c.d().is_homogeneous());
    EXPECT_EQ(c.d().parity(), 1);
  }
}

// A stray ghost-current term spoils d^2 = 0.
TEST(Brst, DSquaredDetectsPerturbation) {
  auto c = build_brst(builtin("sl(2)"), Scalar::k());
  DiffPoly d = c.d() + c.phi(c.algebra().vec("e")) * c.u(c.algebra().vec("h"));
  EXPECT_FALSE(c.engine().bracket(d, d).is_zero());
  EXPECT_TRUE(c.engine().bracket(c.d(), c.d()).is_zero());
}
