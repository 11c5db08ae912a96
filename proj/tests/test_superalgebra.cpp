#include <gtest/gtest.h>

#include "printers.hpp"

#include "wsuper/builtins.hpp"
#include "wsuper/cli.hpp"

using namespace wsuper;

namespace {

Vec V(const LieSuperalgebra& g, std::initializer_list<std::pair<const char*, Rational>> t) {
  Vec v = g.zero();
  for (auto& [n, c] : t) v[g.index(n)] += c;
  return v;
}

nlohmann::json sl2_json() {
  return nlohmann::json::parse(R"J({
    "name": "sl(2)",
    "basis": [{"name": "e"}, {"name": "h"}, {"name": "f"}],
    "brackets": [["h", "e", "2·e"], ["e", "f", "h"], ["h", "f", "-2·f"]],
    "form": [["e", "f", "1"], ["h", "h", "2"]],
    "sl2": {"e": "e", "x": "1/2·h", "f": "f"}
  })J");
}

}  // namespace

TEST(Builtins, DimensionsAndParities) {
  EXPECT_EQ(builtin("sl(2)")->dim(), 3u);
  auto g = builtin("spo(2|1)");
  EXPECT_EQ(g->dim(), 5u);
  EXPECT_EQ(g->parity(g->index("e_od")), 1);
  EXPECT_EQ(g->parity(g->index("h")), 0);
  EXPECT_EQ(builtin("spo(2|3)")->dim(), 12u);
  EXPECT_THROW(builtin("osp(1|2)x"), UnknownBuiltin);
}

// Supercommutators of the defining 3x3 supermatrices, worked out by hand.
TEST(Builtins, Spo21BracketsFromMatrices) {
  auto g = builtin("spo(2|1)");
  EXPECT_EQ(g->bracket(g->vec("e_od"), g->vec("f_od")), V(*g, {{"h", -1}}));
  EXPECT_EQ(g->bracket(g->vec("e_od"), g->vec("e_od")), V(*g, {{"e_ev", 2}}));
  EXPECT_EQ(g->bracket(g->vec("f_od"), g->vec("f_od")), V(*g, {{"f_ev", -2}}));
  EXPECT_EQ(g->bracket(g->vec("h"), g->vec("e_od")), V(*g, {{"e_od", 1}}));
  EXPECT_EQ(g->bracket(g->vec("e_ev"), g->vec("f_od")), V(*g, {{"e_od", 1}}));
  EXPECT_EQ(g->form(g->vec("e_ev"), g->vec("f_ev")), 1);
  EXPECT_EQ(g->form(g->vec("h"), g->vec("h")), 2);
  EXPECT_EQ(g->form(g->vec("e_od"), g->vec("f_od")), -2);
  EXPECT_EQ(g->form(g->vec("f_od"), g->vec("e_od")), 2);
}

TEST(Builtins, Gradings) {
  auto g = builtin("spo(2|1)");
  EXPECT_EQ(g->grade(g->index("e_ev")), 1);
  EXPECT_EQ(g->grade(g->index("e_od")), Rational(1, 2));
  EXPECT_EQ(g->grade(g->index("f_od")), Rational(-1, 2));
  EXPECT_TRUE(is_minimal(*g));
  EXPECT_TRUE(is_minimal(*builtin("sl(2)")));
  auto s = builtin("spo(2|3)");
  EXPECT_FALSE(is_minimal(*s));
  EXPECT_EQ(s->grade(s->index("E3")), Rational(3, 2));
  EXPECT_EQ(s->grade(s->index("F21")), -1);
  EXPECT_EQ(s->grade_of(V(*s, {{"F21", 1}, {"F22", -2}})), -1);
  EXPECT_THROW(s->grade_of(V(*s, {{"F21", 1}, {"F3", 1}})), GradingError);
  EXPECT_THROW(s->grade_of(s->zero()), GradingError);
}

TEST(Builtins, CentralizerDimensions) {
  EXPECT_EQ(centralizer(*builtin("sl(2)")).size(), 1u);
  EXPECT_EQ(centralizer(*builtin("spo(2|1)")).size(), 2u);
  EXPECT_EQ(centralizer(*builtin("spo(2|3)")).size(), 4u);
  auto g = builtin("spo(2|3)");
  for (const auto& v : centralizer(*g)) EXPECT_TRUE(is_zero(g->bracket(g->sl2().f, v)));
}

TEST(Builtins, DualBasisPairing) {
  for (const auto& n : builtin_names()) {
    auto g = builtin(n);
    Mat d = dual_bases(*g);
    for (std::size_t a = 0; a < g->dim(); ++a)
      for (std::size_t b = 0; b < g->dim(); ++b) EXPECT_EQ(g->form(g->basis(a), d[b]), a == b ? 1 : 0) << n;
  }
}

// Jacobi and invariance recomputed directly on random combinations instead of basis triples.
TEST(Builtins, AxiomsOnCombinations) {
  auto g = builtin("spo(2|3)");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-2, 2);
  auto rnd = [&](int parity) {
    Vec v = g->zero();
    for (std::size_t i = 0; i < g->dim(); ++i)
      if (g->parity(i) == parity) v[i] = d(rng);
    return v;
  };
  for (int n = 0; n < 50; ++n) {
    int pa = n & 1, pb = (n >> 1) & 1, pc = (n >> 2) & 1;
    Vec a = rnd(pa), b = rnd(pb), c = rnd(pc);
    Vec lhs = g->bracket(a, g->bracket(b, c));
    Vec rhs = add(g->bracket(g->bracket(a, b), c), scale(g->bracket(b, g->bracket(a, c)), (pa & pb) ? -1 : 1));
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(g->form(g->bracket(a, b), c), g->form(a, g->bracket(b, c)));
  }
}

TEST(Loader, ShareFilesMatchBuiltins) {
  for (auto [file, name] : {std::pair{"sl2.json", "sl(2)"}, {"spo21.json", "spo(2|1)"}, {"spo23.json", "spo(2|3)"}}) {
    auto a = cli::load_algebra(std::string("file:") + WSUPER_SHARE + "/algebras/" + file);
    auto b = builtin(name);
    ASSERT_EQ(a->names(), b->names());
    EXPECT_EQ(a->form_matrix(), b->form_matrix());
    for (std::size_t i = 0; i < a->dim(); ++i)
      for (std::size_t j = 0; j < a->dim(); ++j) EXPECT_EQ(a->structure(i, j), b->structure(i, j));
    EXPECT_EQ(a->grading(), b->grading());
  }
}

TEST(Loader, SupersymmetricCompletion) {
  auto g = cli::algebra_from_json(sl2_json());
  EXPECT_EQ(g.bracket(g.vec("e"), g.vec("h")), V(g, {{"e", -2}}));
  EXPECT_EQ(g.form(g.vec("f"), g.vec("e")), 1);
}

TEST(Loader, Rejections) {
  auto j = sl2_json();
  j["brackets"][1][2] = "2·h";
  EXPECT_THROW(cli::algebra_from_json(j), AxiomViolation);

  j = sl2_json();
  j["form"].push_back({"f", "e", "3"});
  EXPECT_THROW(cli::algebra_from_json(j), AxiomViolation);

  j = sl2_json();
  j["brackets"].push_back({"e", "h", "2·e"});
  EXPECT_THROW(cli::algebra_from_json(j), AxiomViolation);

  j = sl2_json();
  j["basis"].push_back({{"name", "c"}});
  EXPECT_THROW(cli::algebra_from_json(j), DegenerateForm);

  j = sl2_json();
  j["sl2"]["x"] = "h";
  EXPECT_THROW(cli::algebra_from_json(j), AxiomViolation);

  j = sl2_json();
  j["sl2"]["x"] = "e·f";
  EXPECT_THROW(cli::algebra_from_json(j), ParseError);

  j = sl2_json();
  j.erase("sl2");
  EXPECT_THROW(cli::algebra_from_json(j), ParseError);

  j = sl2_json();
  j["basis"][0]["parity"] = 1;
  EXPECT_THROW(cli::algebra_from_json(j), AxiomViolation);
}
