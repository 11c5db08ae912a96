#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wsuper/brst.hpp"
#include "wsuper/builtins.hpp"
#include "wsuper/fractional.hpp"
#include "wsuper/properties.hpp"
#include "wsuper/text.hpp"
#include "wsuper/wred.hpp"
#include "wsuper/zhufin.hpp"

namespace wsuper::cli {

using json = nlohmann::ordered_json;

/// Thrown for malformed invocations and inputs; maps to exit code 2.
struct UsageError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------- algebras

/// Reads a linear combination of basis names ("2·e - 1/2·h") as a coordinate vector.
inline Vec parse_vector(const SpacePtr& space, const std::string& text) {
  DiffPoly p = parse_poly(space, text);
  Vec v(space->size(), Rational(0));
  for (const auto& [m, c] : p.terms()) {
    if (m.size() != 1 || sym_order(m[0]) != 0 || !c.is_constant())
      throw ParseError("'" + text + "' is not a linear combination of basis elements");
    v[sym_gen(m[0])] += c.constant_value();
  }
  return v;
}

inline std::string vector_str(const LieSuperalgebra& g, const Vec& v) { return g.poly(v).str(); }

/// JSON description: name, basis [{name, parity}], nonzero brackets and form entries as [a, b, value] with values
/// in the text grammar, and the sl2 triple. Missing mirrored entries are filled in by supersymmetry.
inline LieSuperalgebra algebra_from_json(const nlohmann::json& j) {
  try {
    std::string name = j.at("name").get<std::string>();
    std::vector<std::string> names;
    std::vector<int> par;
    for (const auto& b : j.at("basis")) {
      names.push_back(b.at("name").get<std::string>());
      par.push_back(b.value("parity", 0));
    }
    std::size_t n = names.size();
    SpacePtr sp = make_space(name, names, par);
    auto sgn = [&](std::size_t a, std::size_t b) { return (par[a] & par[b]) ? -1 : 1; };
    std::vector<std::vector<std::optional<Vec>>> st(n, std::vector<std::optional<Vec>>(n));
    auto put = [&](std::size_t a, std::size_t b, const Vec& v, const std::string& what) {
      if (st[a][b] && *st[a][b] != v) throw AxiomViolation("skewsymmetry: conflicting entries for " + what);
      st[a][b] = v;
    };
    for (const auto& e : j.value("brackets", nlohmann::json::array())) {
      std::size_t a = sp->index(e.at(0).get<std::string>()), b = sp->index(e.at(1).get<std::string>());
      Vec v = parse_vector(sp, e.at(2).get<std::string>());
      std::string what = "[" + names[a] + "," + names[b] + "]";
      put(a, b, v, what);
      if (a != b || sgn(a, b) < 0) put(b, a, scale(v, -sgn(a, b)), what);
    }
    std::vector<std::vector<Vec>> structure(n, std::vector<Vec>(n, Vec(n, Rational(0))));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (st[a][b]) structure[a][b] = *st[a][b];
    Mat form = linalg::zeros(n, n);
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    for (const auto& e : j.value("form", nlohmann::json::array())) {
      std::size_t a = sp->index(e.at(0).get<std::string>()), b = sp->index(e.at(1).get<std::string>());
      Rational c = parse_rational(e.at(2).get<std::string>());
      auto set = [&](std::size_t x, std::size_t y, const Rational& v) {
        if (seen[x][y] && form[x][y] != v)
          throw AxiomViolation("form supersymmetry: conflicting entries for (" + names[a] + "|" + names[b] + ")");
        form[x][y] = v;
        seen[x][y] = true;
      };
      set(a, b, c);
      set(b, a, sgn(a, b) * c);
    }
    const auto& s = j.at("sl2");
    Sl2Triple tr{parse_vector(sp, s.at("e").get<std::string>()), parse_vector(sp, s.at("x").get<std::string>()),
                 parse_vector(sp, s.at("f").get<std::string>())};
    return LieSuperalgebra(name, names, par, std::move(structure), std::move(form), std::move(tr));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("algebra description: ") + e.what());
  }
}

inline json algebra_to_json(const LieSuperalgebra& g) {
  json j;
  j["name"] = g.name();
  j["basis"] = json::array();
  for (std::size_t a = 0; a < g.dim(); ++a) j["basis"].push_back({{"name", g.name_of(a)}, {"parity", g.parity(a)}});
  j["brackets"] = json::array();
  j["form"] = json::array();
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = a; b < g.dim(); ++b) {
      const Vec& v = g.structure(a, b);
      if (!is_zero(v)) j["brackets"].push_back({g.name_of(a), g.name_of(b), vector_str(g, v)});
      Rational c = g.form_matrix()[a][b];
      if (c != 0) j["form"].push_back({g.name_of(a), g.name_of(b), c.get_str()});
    }
  j["sl2"] = {{"e", vector_str(g, g.sl2().e)}, {"x", vector_str(g, g.sl2().x)}, {"f", vector_str(g, g.sl2().f)}};
  return j;
}

/// "builtin:<name>" or "file:<path>"; a bare name is taken as a builtin.
inline AlgebraPtr load_algebra(const std::string& source) {
  if (source.rfind("file:", 0) == 0) {
    std::string path = source.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open algebra file '" + path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
    return std::make_shared<const LieSuperalgebra>(algebra_from_json(j));
  }
  std::string name = source.rfind("builtin:", 0) == 0 ? source.substr(8) : source;
  return builtin(name);
}

inline Scalar parse_level(const std::string& text) {
  if (text == "symbolic" || text == "k") return Scalar::k();
  try {
    return Scalar(parse_rational(text));
  } catch (const Error&) {
    throw UsageError("level must be a rational number or 'symbolic', got '" + text + "'");
  }
}

// ---------------------------------------------------------------- tables

struct TableEntry {
  std::string left, right;
  LambdaPoly value;
};

struct Table {
  std::string algebra, k;
  std::vector<TableEntry> entries;
};

inline json table_to_json(const Table& t) {
  json j;
  j["algebra"] = t.algebra;
  j["k"] = t.k;
  j["entries"] = json::array();
  for (const auto& e : t.entries) {
    json terms = json::array();
    for (std::size_t d = 0; d < e.value.size(); ++d) {
      DiffPoly c = e.value.coeff(d);
      if (!c.is_zero()) terms.push_back({{"degree", d}, {"expr", c.str()}});
    }
    j["entries"].push_back({{"left", e.left}, {"right", e.right}, {"lambda_terms", terms}});
  }
  return j;
}

inline std::string render_json(const Table& t) { return table_to_json(t).dump(2) + "\n"; }

inline Table table_from_json(const std::string& text, const SpacePtr& labels) {
  Table t;
  try {
    auto j = json::parse(text);
    t.algebra = j.at("algebra").get<std::string>();
    t.k = j.at("k").get<std::string>();
    for (const auto& e : j.at("entries")) {
      TableEntry te{e.at("left").get<std::string>(), e.at("right").get<std::string>(), LambdaPoly(labels)};
      labels->index(te.left);
      labels->index(te.right);
      for (const auto& term : e.at("lambda_terms"))
        te.value.add(term.at("degree").get<std::size_t>(), parse_poly(labels, term.at("expr").get<std::string>()));
      t.entries.push_back(std::move(te));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bracket table: ") + e.what());
  }
  return t;
}

inline std::string render_text(const Table& t) {
  std::string out;
  for (const auto& e : t.entries) out += "{" + e.left + " λ " + e.right + "} = " + e.value.str() + "\n";
  return out;
}

namespace detail {

inline std::string latex_name(const std::string& n) {
  static const char* greek[] = {"alpha", "beta", "gamma", "delta", "eta", "lambda", "phi", "psi", "chi", "rho"};
  auto pos = n.find('_');
  std::string base = n.substr(0, pos), sub = pos == std::string::npos ? "" : n.substr(pos + 1);
  for (const char* g : greek)
    if (base == g) base = std::string("\\") + g;
  if (sub.empty()) return base;
  std::string s;
  for (char c : sub) s += c == '_' ? std::string(",") : std::string(1, c);
  return base + "_{" + s + "}";
}

inline std::string latex_rational(const Rational& a) {
  if (is_integer(a)) return a.get_str();
  return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

inline std::string latex_scalar(const Scalar& c, bool& negative) {
  negative = false;
  auto kpow = [](int e) { return e == 1 ? std::string("k") : "k^{" + std::to_string(e) + "}"; };
  if (c.is_monomial()) {
    auto [e, a] = c.terms()[0];
    negative = a < 0;
    Rational m = abs(a);
    if (e == 0) return latex_rational(m);
    return (m == 1 ? "" : latex_rational(m)) + kpow(e);
  }
  std::string out = "\\left(";
  bool first = true;
  for (const auto& [e, a] : c.terms()) {
    std::string part = (e == 0 ? latex_rational(abs(a)) : (abs(a) == 1 ? "" : latex_rational(abs(a))) + kpow(e));
    out += first ? (a < 0 ? "-" : "") + part : (a < 0 ? " - " : " + ") + part;
    first = false;
  }
  return out + "\\right)";
}

inline std::string latex_monomial(const GeneratorSpace& sp, const Monomial& m) {
  std::string out;
  std::size_t i = 0;
  while (i < m.size()) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    std::string s = latex_name(sp.name(sym_gen(m[i])));
    unsigned o = sym_order(m[i]);
    if (o == 1) s = "\\partial " + s;
    if (o > 1) s = "\\partial^{" + std::to_string(o) + "} " + s;
    if (j - i > 1) s = (o ? "(" + s + ")" : s) + "^{" + std::to_string(j - i) + "}";
    out += (out.empty() ? "" : " ") + s;
    i = j;
  }
  return out;
}

}  // namespace detail

inline std::string latex_lambda(const LambdaPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t n = 0; n < p.size(); ++n) {
    std::string lam = n == 0 ? "" : (n == 1 ? "\\lambda" : "\\lambda^{" + std::to_string(n) + "}");
    for (const auto& [m, c] : p.coeffs()[n].terms()) {
      bool neg;
      std::string cs = detail::latex_scalar(c, neg);
      std::string body = lam;
      if (!m.empty()) body += (body.empty() ? "" : " ") + detail::latex_monomial(*p.space(), m);
      std::string term = body.empty() ? cs : (cs == "1" ? body : cs + " " + body);
      out += out.empty() ? (neg ? "-" : "") + term : (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

inline std::string render_latex(const Table& t) {
  std::string out = "\\begin{align*}\n";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    out += "\\{" + detail::latex_name(e.left) + "{}_\\lambda " + detail::latex_name(e.right) + "\\} &= " +
           latex_lambda(e.value) + (i + 1 < t.entries.size() ? " \\\\\n" : "\n");
  }
  return out + "\\end{align*}\n";
}

inline std::string render(const Table& t, const std::string& format) {
  if (format == "json") return render_json(t);
  if (format == "latex") return render_latex(t);
  return render_text(t);
}

/// Upper triangle (i ≤ j) of a bracket table between the labels of a space.
template <class F>
Table pair_table(const std::string& algebra, const std::string& k, const SpacePtr& labels, F&& bracket) {
  Table t{algebra, k, {}};
  for (std::size_t i = 0; i < labels->size(); ++i)
    for (std::size_t j = i; j < labels->size(); ++j) t.entries.push_back({labels->name(i), labels->name(j), bracket(i, j)});
  return t;
}

struct GoldenLine {
  std::string left, right;
  bool match;
  LambdaPoly engine, golden;
};

/// Compares each golden entry against the engine bracket of the same ordered pair.
template <class F>
std::vector<GoldenLine> compare_golden(const Table& golden, const SpacePtr& labels, F&& bracket) {
  std::vector<GoldenLine> out;
  for (const auto& e : golden.entries) {
    LambdaPoly v = bracket(labels->index(e.left), labels->index(e.right));
    out.push_back({e.left, e.right, v == e.value, v, e.value});
  }
  return out;
}

// ---------------------------------------------------------------- W-algebra setup

inline std::string level_str(const Scalar& k) { return k.is_constant() ? k.str() : "symbolic"; }

/// Minimal gradings use the closed-form generators; otherwise the linear-algebra search at a rational level.
inline std::shared_ptr<const GeneratorFamily> w_family(const AlgebraPtr& g, const Scalar& k) {
  if (k.is_zero()) throw UsageError("the level must be nonzero");
  auto ctx = std::make_shared<const ReductionContext>(g, k);
  auto labels = example_labels(g->name());
  if (is_minimal(*g)) return std::make_shared<const GeneratorFamily>(minimal_generators(ctx, labels));
  if (!k.is_constant()) throw UsageError(g->name() + " is not minimal; generator search needs a rational --k");
  Rational top = 0;
  for (const auto& j : g->grading()) top = std::max(top, Rational(Rational(1) - j));
  std::vector<Generator> gens;
  for (auto& fg : find_generators(*ctx, top, labels)) gens.push_back(std::move(fg.gen));
  return std::make_shared<const GeneratorFamily>(ctx, std::move(gens));
}

// ---------------------------------------------------------------- driver

struct Options {
  std::string algebra = "builtin:spo(2|1)";
  std::string k = "symbolic";
  unsigned t = 1;
  std::string format = "text";
  std::string golden;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool print_report(std::ostream& out, const std::string& title, const CheckReport& r) {
  out << title << " : " << (r.ok() ? "PASS" : "FAIL") << " (" << r.checked << " checked";
  if (!r.ok()) out << ", " << r.violations.size() << " violations";
  out << ")\n";
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) out << "  " << r.violations[i] << "\n";
  return r.ok();
}

struct GenRow {
  std::string label, leading, element;
};

inline void print_generators(std::ostream& out, const std::string& format, const std::string& algebra,
                             const std::string& k, const std::vector<GenRow>& rows) {
  if (format == "json") {
    json j{{"algebra", algebra}, {"k", k}, {"generators", json::array()}};
    for (const auto& r : rows) j["generators"].push_back({{"label", r.label}, {"leading", r.leading}, {"element", r.element}});
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& r : rows) out << r.label << " = " << r.element << "\n";
}

template <class F>
int table_command(std::ostream& out, const Options& o, const Table& t, const SpacePtr& labels, F&& bracket) {
  if (o.golden.empty()) {
    out << render(t, o.format);
    return 0;
  }
  Table golden = table_from_json(read_file(o.golden), labels);
  auto lines = compare_golden(golden, labels, bracket);
  std::size_t ok = 0;
  for (const auto& l : lines) {
    out << (l.match ? "MATCH          " : "ENGINE-DIFFERS ") << "{" << l.left << " λ " << l.right << "}";
    if (l.match) {
      out << " = " << l.engine.str() << "\n";
    } else {
      out << "\n  engine: " << l.engine.str() << "\n  golden: " << l.golden.str() << "\n";
    }
    ok += l.match;
  }
  out << ok << "/" << lines.size() << " entries match\n";
  return ok == lines.size() ? 0 : 1;
}

}  // namespace detail

/// Exit codes: 0 success, 1 a check failed, 2 usage or input error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in classical affine, finite and fractional W-superalgebras", "wsuper"};
  app.require_subcommand(1, 1);
  Options o;
  auto common = [&](CLI::App* s, bool level, bool golden) {
    s->add_option("--algebra", o.algebra, "builtin:<name> or file:<path.json>")->capture_default_str();
    if (level) s->add_option("--k", o.k, "level: a rational number or 'symbolic'")->capture_default_str();
    s->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json", "latex"}))
        ->capture_default_str();
    if (golden) s->add_option("--golden", o.golden, "golden bracket table (JSON) to compare against");
  };
  auto* verify = app.add_subcommand("verify-algebra", "validate a Lie superalgebra with its sl2 triple and form");
  common(verify, false, false);
  auto* brst = app.add_subcommand("brst-check", "check the BRST complex identities");
  common(brst, true, false);
  auto* wgens = app.add_subcommand("w-gens", "free generators of the classical affine W-algebra");
  common(wgens, true, false);
  auto* wbr = app.add_subcommand("w-bracket", "λ-brackets between the free generators");
  common(wbr, true, true);
  auto* zhu = app.add_subcommand("zhu", "finite W-algebra generators and brackets (minimal gradings)");
  common(zhu, true, true);
  auto* fgens = app.add_subcommand("frac-gens", "generators of the fractional W-algebra");
  common(fgens, true, false);
  auto* fbr = app.add_subcommand("frac-bracket", "λ-brackets between fractional generators");
  common(fbr, true, true);
  for (auto* s : {fgens, fbr}) s->add_option("--t", o.t, "truncation degree (t >= 1)")->capture_default_str();
  auto* props = app.add_subcommand("props", "randomized axiom checks");
  common(props, true, false);
  props->add_option("--seed", o.seed, "random seed")->capture_default_str();
  props->add_option("--samples", o.samples, "cases per suite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    AlgebraPtr g = load_algebra(o.algebra);
    Scalar k = parse_level(o.k);
    std::string ks = level_str(k);

    if (verify->parsed()) {
      if (o.format == "json") {
        out << algebra_to_json(*g).dump(2) << "\n";
        return 0;
      }
      out << "algebra " << g->name() << " : dimension " << g->dim() << "\n";
      for (std::size_t a = 0; a < g->dim(); ++a)
        out << "  " << g->name_of(a) << "  parity " << g->parity(a) << "  grade " << g->grade(a).get_str() << "\n";
      out << "e = " << vector_str(*g, g->sl2().e) << ", x = " << vector_str(*g, g->sl2().x)
          << ", f = " << vector_str(*g, g->sl2().f) << "\n";
      out << "grading : " << (is_minimal(*g) ? "minimal" : "not minimal") << "\n";
      out << "axioms : PASS\n";
      return 0;
    }

    if (brst->parsed()) {
      auto c = build_brst(g, k);
      bool ok = true;
      ok &= detail::print_report(out, "{d λ d} = 0", check_d_squared(c));
      ok &= detail::print_report(out, "d on generators", check_d_formulas(c));
      ok &= detail::print_report(out, "d0 J", check_d0_J(c));
      ok &= detail::print_report(out, "K brackets", check_K_brackets(c));
      ok &= detail::print_report(out, "J closure", check_J_closure(c));
      ok &= detail::print_report(out, "L action", check_L_action(c));
      return ok ? 0 : 1;
    }

    if (wgens->parsed() || wbr->parsed()) {
      auto fam = w_family(g, k);
      if (wgens->parsed()) {
        std::vector<detail::GenRow> rows;
        for (const auto& G : fam->generators()) rows.push_back({G.label, vector_str(*g, G.leading), G.element.str()});
        detail::print_generators(out, o.format, g->name(), ks, rows);
        return 0;
      }
      auto br = [&](std::size_t i, std::size_t j) { return fam->bracket(i, j); };
      return detail::table_command(out, o, pair_table(g->name(), ks, fam->labels(), br), fam->labels(), br);
    }

    if (zhu->parsed()) {
      if (!is_minimal(*g)) throw UsageError(g->name() + " is not minimal");
      auto fw = FiniteWAlgebra(w_family(g, k));
      auto br = [&](std::size_t i, std::size_t j) { return LambdaPoly(fw.bracket_labels(fw.label(i), fw.label(j))); };
      if (o.golden.empty()) {
        std::vector<detail::GenRow> rows;
        for (std::size_t i = 0; i < fw.generators().size(); ++i)
          rows.push_back({fw.labels()->name(i), vector_str(*g, fw.family().generators()[i].leading),
                          fw.generators()[i].str()});
        if (o.format != "latex") detail::print_generators(out, o.format, g->name(), ks, rows);
        if (o.format == "json") return 0;
      }
      return detail::table_command(out, o, pair_table(g->name(), ks, fw.labels(), br), fw.labels(), br);
    }

    if (fgens->parsed() || fbr->parsed()) {
      if (o.t < 1) throw UsageError("--t must be at least 1");
      auto ctx = std::make_shared<const FracContext>(g, o.t, k);
      FracFamily fam(ctx);
      if (fgens->parsed()) {
        std::vector<detail::GenRow> rows;
        for (const auto& G : fam.generators())
          rows.push_back({G.label, vector_str(*g, G.vec) + " z^" + std::to_string(G.power), G.element.str()});
        detail::print_generators(out, o.format, g->name(), ks, rows);
        return 0;
      }
      auto br = [&](std::size_t i, std::size_t j) { return fam.bracket(i, j); };
      return detail::table_command(out, o, pair_table(g->name(), ks, fam.labels(), br), fam.labels(), br);
    }

    if (props->parsed()) {
      bool ok = true;
      RandomSpec cur_spec;
      cur_spec.max_terms = 2;
      cur_spec.max_degree = 2;
      RandomSpec brst_spec;
      brst_spec.max_terms = 2;
      ok &= detail::print_report(out, "diffpoly axioms", check_diffpoly_axioms(g->space(), o.seed, o.samples));
      LambdaEngine cur(current_base(*g, k));
      ok &= detail::print_report(out, "current algebra skew/Jacobi", check_pva_axioms(cur, o.seed + 1, o.samples, cur_spec));
      auto c = build_brst(g, k);
      ok &= detail::print_report(out, "BRST complex skew/Jacobi",
                                 check_pva_axioms(c.engine(), o.seed + 2, o.samples, brst_spec));
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownBuiltin& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotMinimal& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace wsuper::cli
