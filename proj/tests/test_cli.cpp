#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "printers.hpp"
#include "wsuper/cli.hpp"

using namespace wsuper;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wsuper");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

const std::string share = WSUPER_SHARE;

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"w-gens", "--algebra", "builtin:g2"}).code, 2);
  EXPECT_EQ(run({"w-gens", "--k", "one"}).code, 2);
  EXPECT_EQ(run({"w-gens", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"w-bracket", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"frac-gens", "--t", "0"}).code, 2);
  EXPECT_EQ(run({"zhu", "--algebra", "spo(2|3)", "--k", "1"}).code, 2);
  EXPECT_EQ(run({"w-gens", "--algebra", "spo(2|3)"}).code, 2);
  EXPECT_EQ(run({"verify-algebra", "--algebra", "file:/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"w-bracket", "--golden", "/nonexistent.json"}).code, 2);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("w-bracket"), std::string::npos);
}

TEST(Cli, VerifyAlgebra) {
  auto r = run({"verify-algebra", "--algebra", "builtin:spo(2|1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("axioms : PASS"), std::string::npos);
  EXPECT_NE(r.out.find("grading : minimal"), std::string::npos);
  EXPECT_EQ(run({"verify-algebra", "--algebra", "file:" + share + "/algebras/sl2.json"}).code, 0);
  auto j = run({"verify-algebra", "--algebra", "spo(2|3)", "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(j.out, run({"verify-algebra", "--algebra", "file:" + share + "/algebras/spo23.json", "--format", "json"}).out);
}

TEST(Cli, VerifyAlgebraRejectsBrokenFile) {
  auto path = std::filesystem::temp_directory_path() / "wsuper_broken_sl2.json";
  {
    std::ofstream f(path);
    f << R"J({"name": "broken", "basis": [{"name": "e"}, {"name": "h"}, {"name": "f"}],
             "brackets": [["h", "e", "2·e"], ["e", "f", "h"], ["h", "f", "2·f"]],
             "form": [["e", "f", "1"], ["h", "h", "2"]], "sl2": {"e": "e", "x": "1/2·h", "f": "f"}})J";
  }
  auto r = run({"verify-algebra", "--algebra", "file:" + path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("check failed"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, BrstCheck) {
  auto r = run({"brst-check", "--algebra", "spo(2|1)", "--k", "symbolic"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("{d λ d} = 0 : PASS", 0), 0u);
  EXPECT_EQ(count(r.out, "PASS"), 6u);
}

TEST(Cli, WBracketText) {
  auto r = run({"w-bracket", "--algebra", "spo(2|1)", "--k", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "{phi_od λ phi_od} = -2·phi_ev - 2·λ^2\n"
            "{phi_od λ phi_ev} = -(1/2)·∂(phi_od) - (3/2)·λ·phi_od\n"
            "{phi_ev λ phi_ev} = -∂(phi_ev) - 2·λ·phi_ev - (1/2)·λ^3\n");
}

TEST(Cli, LatexOutput) {
  auto r = run({"w-bracket", "--algebra", "sl(2)", "--format", "latex"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\\{\\phi_{f}{}_\\lambda \\phi_{f}\\} &= -k \\partial \\phi_{f} - 2k \\lambda \\phi_{f} - "
                       "\\frac{1}{2}k^{3} \\lambda^{3}"),
            std::string::npos)
      << r.out;
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
  struct Case {
    std::vector<std::string> args;
  };
  for (const auto& c : {Case{{"w-bracket", "--algebra", "spo(2|1)", "--k", "1"}},
                        Case{{"w-bracket", "--algebra", "spo(2|1)"}},
                        Case{{"w-bracket", "--algebra", "spo(2|3)", "--k", "1"}},
                        Case{{"frac-bracket", "--algebra", "spo(2|1)", "--t", "1"}}}) {
    auto args = c.args;
    args.insert(args.end(), {"--format", "json"});
    auto r = run(args);
    ASSERT_EQ(r.code, 0);
    auto g = cli::load_algebra(c.args[2]);
    SpacePtr labels;
    std::shared_ptr<const GeneratorFamily> fam;
    std::shared_ptr<FracFamily> ffam;
    if (c.args[0] == "w-bracket") {
      fam = cli::w_family(g, cli::parse_level(c.args.size() > 4 ? c.args[4] : "symbolic"));
      labels = fam->labels();
    } else {
      ffam = std::make_shared<FracFamily>(std::make_shared<const FracContext>(g, 1, Scalar::k()));
      labels = ffam->labels();
    }
    auto table = cli::table_from_json(r.out, labels);
    EXPECT_EQ(cli::render_json(table), r.out);
    for (const auto& e : table.entries) {
      auto i = labels->index(e.left), j = labels->index(e.right);
      EXPECT_EQ(e.value, fam ? fam->bracket(i, j) : ffam->bracket(i, j));
    }
  }
}

TEST(Cli, GoldenSpo21) {
  auto r = run({"w-bracket", "--algebra", "spo(2|1)", "--k", "1", "--golden", share + "/golden/spo21_k1.json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, "MATCH"), 3u);
  EXPECT_NE(r.out.find("3/3 entries match"), std::string::npos);
}

TEST(Cli, GoldenSpo23ReportsDifferences) {
  auto r = run({"w-bracket", "--algebra", "spo(2|3)", "--k", "1", "--golden", share + "/golden/spo23_k1.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(count(r.out, "ENGINE-DIFFERS"), 5u);
  EXPECT_EQ(count(r.out, "  engine: "), 5u);
  EXPECT_EQ(count(r.out, "  golden: "), 5u);
  EXPECT_NE(r.out.find("5/10 entries match"), std::string::npos);
}

TEST(Cli, GeneratorsJson) {
  auto r = run({"w-gens", "--algebra", "sl(2)", "--k", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["generators"][0]["label"], "phi_f");
  EXPECT_EQ(j["generators"][0]["element"], "-(1/4)·h^2 - (1/2)·∂(h) + f");
  auto s = run({"w-gens", "--algebra", "spo(2|3)", "--k", "1"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(count(s.out, "\n"), 4u);
}

TEST(Cli, ZhuAndFractional) {
  auto z = run({"zhu", "--algebra", "spo(2|1)"});
  EXPECT_EQ(z.code, 0);
  EXPECT_NE(z.out.find("{psi_od λ psi_od} = -2·psi_ev"), std::string::npos);
  auto f = run({"frac-gens", "--algebra", "spo(2|1)", "--t", "2", "--k", "1"});
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(count(f.out, "\n"), 12u);
  auto fb = run({"frac-bracket", "--algebra", "spo(2|1)", "--t", "1"});
  EXPECT_EQ(fb.code, 0);
  EXPECT_EQ(count(fb.out, "\n"), 28u);
}

TEST(Cli, Props) {
  auto r = run({"props", "--algebra", "sl(2)", "--samples", "20", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(count(r.out, ": PASS"), 3u);
}
