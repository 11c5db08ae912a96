#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wsuper/lambda.hpp"
#include "wsuper/superalgebra.hpp"

namespace wsuper {

/// Cur_k(g): {a_λ b} = [a,b] + kλ(a|b) on the algebra's own generator space.
inline BaseBracket current_base(const LieSuperalgebra& g, const Scalar& k) {
  BaseBracket base(g.space());
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      LambdaPoly v(g.space());
      v.add(0, g.poly(g.structure(a, b)));
      v.add(1, DiffPoly(k * Scalar(g.form(g.basis(a), g.basis(b)))));
      base.set(a, b, v, false);
    }
  return base;
}

/// V(g,f,k) = S(C[∂]⊗g)/I with I the differential ideal generated by m + (f|m), m ∈ ⊕_{i≥1} g(i).
class ReductionContext {
 public:
  ReductionContext(AlgebraPtr g, Scalar k)
      : g_(std::move(g)), k_(std::move(k)), engine_(std::make_shared<const LambdaEngine>(current_base(*g_, k_))) {
    for (std::size_t i = 0; i < g_->dim(); ++i) {
      if (g_->grade(i) > 0) n_.push_back(i);
      if (g_->grade(i) < 1) reduced_.push_back(i);
    }
  }

  const LieSuperalgebra& algebra() const { return *g_; }
  const AlgebraPtr& algebra_ptr() const { return g_; }
  const Scalar& k() const { return k_; }
  const SpacePtr& space() const { return g_->space(); }
  const LambdaEngine& engine() const { return *engine_; }
  /// Basis indices of n = ⊕_{i>0} g(i).
  const std::vector<std::size_t>& nilpotent() const { return n_; }
  /// Basis indices of g_{<1}, the symbols that survive reduction.
  const std::vector<std::size_t>& reduced_symbols() const { return reduced_; }

  DiffPoly reduce(const DiffPoly& A) const {
    const auto& g = *g_;
    return A.substitute([&](Sym s) -> std::optional<DiffPoly> {
      std::size_t i = sym_gen(s);
      if (g.grade(i) < 1) return std::nullopt;
      if (sym_order(s) > 0) return DiffPoly();
      return DiffPoly(Scalar(-g.form(g.sl2().f, g.basis(i))));
    });
  }
  LambdaPoly reduce(const LambdaPoly& A) const {
    return A.map([&](const DiffPoly& p) { return reduce(p); });
  }

  /// ad_λ n (A) = {n_λ A} + I[λ].
  LambdaPoly ad_lambda(const Vec& n, const DiffPoly& A) const { return reduce(engine_->bracket(g_->poly(n), A)); }

  LambdaPoly bracket(const DiffPoly& A, const DiffPoly& B) const { return reduce(engine_->bracket(A, B)); }

 private:
  AlgebraPtr g_;
  Scalar k_;
  std::shared_ptr<const LambdaEngine> engine_;
  std::vector<std::size_t> n_, reduced_;
};

struct Membership {
  bool ok = true;
  std::string n;
  std::size_t degree = 0;
  DiffPoly residual;
};

/// A ∈ W iff ad_λ n (A) ≡ 0 for every basis element n of n; the witness is the first failure.
inline Membership is_w_element(const ReductionContext& ctx, const DiffPoly& A) {
  const auto& g = ctx.algebra();
  for (auto i : ctx.nilpotent()) {
    LambdaPoly r = ctx.ad_lambda(g.basis(i), A);
    if (!r.is_zero()) {
      std::size_t d = 0;
      while (r.coeff(d).is_zero()) ++d;
      return {false, g.name_of(i), d, r.coeff(d)};
    }
  }
  return {};
}

struct WElement {
  DiffPoly rep;
  bool certified = false;
};

inline WElement certify(const ReductionContext& ctx, const DiffPoly& A) {
  DiffPoly r = ctx.reduce(A);
  return {r, is_w_element(ctx, r).ok};
}

inline LambdaPoly w_bracket(const ReductionContext& ctx, const WElement& A, const WElement& B) {
  if (!A.certified || !B.certified) throw Uncertified("w_bracket needs certified W-elements");
  return ctx.bracket(A.rep, B.rep);
}

struct Generator {
  std::string label;
  Vec leading;
  DiffPoly element;
};

inline std::string default_label(const LieSuperalgebra& g, const Vec& v, std::size_t fallback) {
  std::size_t nz = 0, idx = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) ++nz, idx = i;
  if (nz == 1 && v[idx] == 1) return "phi_" + g.name_of(idx);
  return "phi_v" + std::to_string(fallback);
}

/// Given images ι(G_c) = c·y_c + (terms in y of lower weight), returns T_c with T_c(ι(G)) = G_c by elimination in
/// increasing weight.
inline std::vector<DiffPoly> triangular_inverse(const SpacePtr& labels, const std::vector<DiffPoly>& images,
                                                const std::vector<Rational>& weights) {
  std::size_t r = images.size();
  std::vector<std::size_t> order(r);
  for (std::size_t c = 0; c < r; ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weights[a] < weights[b]; });
  std::vector<std::optional<DiffPoly>> inv(r);
  auto invert = [&](const DiffPoly& p) {
    return p.substitute([&](Sym s) -> std::optional<DiffPoly> { return inv[sym_gen(s)]->partial(sym_order(s)); });
  };
  for (auto c : order) {
    DiffPoly lin = DiffPoly::symbol(labels, c, 0);
    Scalar lc = images[c].coefficient({make_sym(c, 0, labels->parity(c))});
    if (lc.is_zero() || !lc.is_monomial())
      throw NotTriangular(labels->name(c) + ": leading coefficient " + lc.str() + " is not invertible");
    DiffPoly rest = images[c] - lin * lc;
    for (const auto& [m, cf] : rest.terms())
      for (Sym s : m)
        if (!inv[sym_gen(s)])
          throw NotTriangular(labels->name(c) + ": projection involves " + labels->name(sym_gen(s)) +
                              " of the same or higher weight");
    inv[c] = (lin - invert(rest)) * (Scalar(1) / lc);
  }
  std::vector<DiffPoly> out;
  for (auto& t : inv) out.push_back(*t);
  return out;
}

/// Free generators of W with leading terms forming a basis of g_f; supports re-expression in generators.
class GeneratorFamily {
 public:
  GeneratorFamily(std::shared_ptr<const ReductionContext> ctx, std::vector<Generator> gens)
      : ctx_(std::move(ctx)), gens_(std::move(gens)) {
    const auto& g = ctx_->algebra();
    std::vector<std::string> names;
    std::vector<int> par;
    for (auto& G : gens_) {
      G.element = ctx_->reduce(G.element);
      names.push_back(G.label);
      par.push_back(g.parity_of(G.leading));
      auto mem = is_w_element(*ctx_, G.element);
      if (!mem.ok)
        throw Uncertified(G.label + " is not ad n-invariant: ad " + mem.n + " gives " + mem.residual.str() + " at λ^" +
                          std::to_string(mem.degree));
      if (G.element.parity() != par.back()) throw ParityMismatch(G.label + " has the wrong parity");
    }
    labels_ = make_space("generators of W(" + g.name() + ")", names, par);
    build_inverse();
  }

  const ReductionContext& context() const { return *ctx_; }
  const std::shared_ptr<const ReductionContext>& context_ptr() const { return ctx_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const SpacePtr& labels() const { return labels_; }
  std::size_t index(const std::string& label) const { return labels_->index(label); }
  DiffPoly label(std::size_t i, unsigned order = 0) const { return DiffPoly::symbol(labels_, i, order); }
  const std::vector<Rational>& weights() const { return weights_; }

  /// Differential polynomial in generator labels ↦ reduced element of V.
  DiffPoly evaluate(const DiffPoly& P) const {
    if (P.is_constant()) return DiffPoly(P.constant_term());
    return ctx_->reduce(P.substitute([&](Sym s) -> std::optional<DiffPoly> {
      return gens_[sym_gen(s)].element.partial(sym_order(s));
    }));
  }
  LambdaPoly evaluate(const LambdaPoly& P) const {
    return P.map_into(ctx_->space(), [&](const DiffPoly& p) { return evaluate(p); });
  }

  /// Writes a W-element as a differential polynomial in the generators; the result is verified by evaluation.
  DiffPoly express(const DiffPoly& A) const {
    DiffPoly red = ctx_->reduce(A);
    DiffPoly out = invert(iota(red));
    if (evaluate(out) != red) throw NotTriangular("element is not a polynomial in the generators: " + red.str());
    return out.with_space(labels_);
  }
  LambdaPoly express(const LambdaPoly& A) const {
    return A.map_into(labels_, [&](const DiffPoly& p) { return express(p); });
  }

  /// {G_i λ G_j} in generator labels.
  LambdaPoly bracket(std::size_t i, std::size_t j) const {
    return express(ctx_->bracket(gens_[i].element, gens_[j].element));
  }
  LambdaPoly bracket(const DiffPoly& P, const DiffPoly& Q) const {
    return express(ctx_->bracket(evaluate(P), evaluate(Q)));
  }

  /// The projection ι: ∂^n a ↦ ∂^n (g_f-component of a), written in label coordinates.
  DiffPoly iota(const DiffPoly& red) const {
    return red.substitute([&](Sym s) -> std::optional<DiffPoly> { return coord_[sym_gen(s)].partial(sym_order(s)); });
  }

 private:
  void build_inverse() {
    const auto& g = ctx_->algebra();
    std::size_t r = gens_.size(), n = g.dim();
    Mat y = linalg::zeros(n, r);
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t i = 0; i < n; ++i) y[i][c] = gens_[c].leading[i];
    coord_.assign(n, DiffPoly());
    for (auto a : ctx_->reduced_symbols()) {
      Vec pa = centralizer_component(g, g.basis(a));
      auto sol = linalg::solve(y, pa);
      if (!sol) throw NotTriangular("leading terms do not span g_f");
      DiffPoly lin(labels_);
      for (std::size_t c = 0; c < r; ++c)
        if ((*sol)[c] != 0) lin += label(c) * Scalar((*sol)[c]);
      coord_[a] = lin;
    }
    weights_.resize(r);
    for (std::size_t c = 0; c < r; ++c) {
      std::optional<Rational> j;
      for (std::size_t i = 0; i < n; ++i) {
        if (gens_[c].leading[i] == 0) continue;
        if (j && *j != g.grade(i)) throw NotTriangular(gens_[c].label + " has an inhomogeneous leading term");
        j = g.grade(i);
      }
      if (!j) throw NotTriangular(gens_[c].label + " has zero leading term");
      weights_[c] = 1 - *j;
    }
    std::vector<DiffPoly> images;
    for (const auto& G : gens_) images.push_back(iota(G.element).with_space(labels_));
    inverse_ = triangular_inverse(labels_, images, weights_);
  }

  DiffPoly invert(const DiffPoly& p) const {
    return p.substitute([&](Sym s) -> std::optional<DiffPoly> { return inverse_[sym_gen(s)].partial(sym_order(s)); });
  }

  std::shared_ptr<const ReductionContext> ctx_;
  std::vector<Generator> gens_;
  SpacePtr labels_;
  std::vector<DiffPoly> coord_;
  std::vector<Rational> weights_;
  std::vector<DiffPoly> inverse_;
};

/// Basis a_i of g_f(0) and b_i with (a_i|b_j) = δ_{ij}.
struct FZeroPairs {
  std::vector<Vec> a, b;
};

inline FZeroPairs gf_zero_pairs(const LieSuperalgebra& g) {
  FZeroPairs p;
  for (const auto& v : centralizer(g))
    if (is_zero(sub(v, graded_part(g, v, 0)))) p.a.push_back(v);
  std::size_t r = p.a.size();
  if (r == 0) return p;
  Mat gram = linalg::zeros(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < r; ++l) gram[i][l] = g.form(p.a[i], p.a[l]);
  Mat c = linalg::inverse(linalg::transpose(gram));
  for (std::size_t j = 0; j < r; ++j) {
    Vec b = g.zero();
    for (std::size_t l = 0; l < r; ++l) b = add(b, scale(p.a[l], c[j][l]));
    p.b.push_back(b);
  }
  return p;
}

/// Generators φ_v (v ∈ g_f(0)), φ_w (w ∈ g(−1/2)) and φ_f for a minimal nilpotent f.
inline std::vector<Generator> minimal_generator_list(const ReductionContext& ctx,
                                                     const std::map<std::string, std::string>& labels = {}) {
  const auto& g = ctx.algebra();
  MinimalData md = minimal_data(g);
  const Scalar& k = ctx.k();
  auto P = [&](const Vec& v) { return g.poly(v); };
  auto pick = [&](const Vec& v, std::size_t i) {
    std::string d = default_label(g, v, i);
    auto it = labels.find(d);
    return it == labels.end() ? d : it->second;
  };
  std::vector<Generator> out;
  std::size_t counter = 0;
  for (const auto& v : gf_zero_pairs(g).a) {
    DiffPoly e = P(v);
    for (std::size_t a = 0; a < md.z.size(); ++a)
      e -= P(md.z_star[a]) * P(g.bracket(g.basis(md.z[a]), v)) * Scalar(Rational(1, 2));
    out.push_back({pick(v, counter++), v, ctx.reduce(e)});
  }
  for (auto wi : g.grading_component(Rational(-1, 2))) {
    Vec w = g.basis(wi);
    DiffPoly e = P(w);
    for (std::size_t a = 0; a < md.z.size(); ++a) {
      Vec za = g.basis(md.z[a]);
      e -= P(md.z_star[a]) * P(g.bracket(za, w));
      for (std::size_t b = 0; b < md.z.size(); ++b)
        e += P(md.z_star[a]) * P(md.z_star[b]) * P(g.bracket(g.basis(md.z[b]), g.bracket(za, w))) *
             Scalar(Rational(1, 3));
      e -= g.poly(md.z_star[a], 1) * (k * Scalar(g.form(za, w)));
    }
    out.push_back({pick(w, counter++), w, ctx.reduce(e)});
  }
  Mat dual = dual_bases(g);
  DiffPoly L = g.poly(g.sl2().x, 1);
  Scalar half_inv_k = Scalar(Rational(1, 2)) / k;
  for (std::size_t a = 0; a < g.dim(); ++a) L += P(dual[a]) * P(g.basis(a)) * half_inv_k;
  DiffPoly phi_f = -ctx.reduce(L) * k;
  for (std::size_t a = 0; a < md.z.size(); ++a)
    phi_f += g.poly(md.z_star[a], 1) * P(g.basis(md.z[a])) * (k * Scalar(Rational(1, 2)));
  out.push_back({pick(g.sl2().f, counter++), g.sl2().f, ctx.reduce(phi_f)});
  return out;
}

inline GeneratorFamily minimal_generators(std::shared_ptr<const ReductionContext> ctx,
                                          const std::map<std::string, std::string>& labels = {}) {
  auto gens = minimal_generator_list(*ctx, labels);
  return GeneratorFamily(std::move(ctx), std::move(gens));
}

namespace detail {

/// All canonical monomials of the given conformal weight and parity in the listed symbols.
inline std::vector<Monomial> monomials_of_weight(const std::vector<std::pair<Sym, Rational>>& syms, const Rational& weight,
                                                 int parity) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, Rational, int)> rec = [&](std::size_t from, Rational left, int par) {
    if (left == 0) {
      if (par == parity && !cur.empty()) out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < syms.size(); ++i) {
      const auto& [s, w] = syms[i];
      if (w > left) continue;
      cur.push_back(s);
      rec(sym_parity(s) ? i + 1 : i, left - w, par ^ sym_parity(s));
      cur.pop_back();
    }
  };
  rec(0, weight, 0);
  return out;
}

inline std::size_t support(const Vec& v) {
  return std::size_t(std::count_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; }));
}

/// Lexicographic comparison of supports, then values, in column (monomial) order.
inline bool lex_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool za = a[i] == 0, zb = b[i] == 0;
    if (za != zb) return zb;
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace detail

struct FoundGenerator {
  Generator gen;
  std::size_t unknowns = 0;
  std::size_t freedom = 0;
};

/// Linear-algebra search: for each g_f basis vector v of weight Δ ≤ weight_bound, solve ad_λ n (v + Σ c_m m) ≡ 0
/// over monomials m of weight Δ in symbols of ad-x weight strictly above that of v.
inline std::vector<FoundGenerator> find_generators(const ReductionContext& ctx, const Rational& weight_bound,
                                                   const std::map<std::string, std::string>& labels = {}) {
  const auto& g = ctx.algebra();
  if (!ctx.k().is_constant()) throw Error("find_generators needs a rational level");
  std::vector<FoundGenerator> out;
  auto gf = centralizer(g);
  std::stable_sort(gf.begin(), gf.end(), [&](const Vec& a, const Vec& b) {
    auto jw = [&](const Vec& v) {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return g.grade(i);
      return Rational(0);
    };
    return jw(a) > jw(b);
  });
  std::size_t counter = 0;
  for (const auto& v : gf) {
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    Rational jv = g.grade(lead), delta = 1 - jv;
    int pv = g.parity_of(v);
    std::string lbl = default_label(g, v, counter++);
    if (auto it = labels.find(lbl); it != labels.end()) lbl = it->second;
    if (delta > weight_bound) continue;
    std::vector<std::pair<Sym, Rational>> syms;
    for (auto a : ctx.reduced_symbols()) {
      if (g.grade(a) <= jv) continue;
      Rational wa = 1 - g.grade(a);
      for (unsigned n = 0; wa + n <= delta; ++n) syms.push_back({make_sym(a, n, g.parity(a)), wa + n});
    }
    std::sort(syms.begin(), syms.end());
    auto monos = detail::monomials_of_weight(syms, delta, pv);
    std::vector<DiffPoly> cand;
    for (const auto& m : monos) cand.push_back(DiffPoly::term(g.space(), Scalar(1), m));
    // Equations keyed by (n, λ-degree, monomial).
    std::map<std::tuple<std::size_t, std::size_t, Monomial>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(cand.size() + 1);
    auto collect = [&](const DiffPoly& p, std::size_t col) {
      for (auto ni : ctx.nilpotent()) {
        LambdaPoly r = ctx.ad_lambda(g.basis(ni), p);
        for (std::size_t d = 0; d < r.size(); ++d)
          for (const auto& [m, c] : r.coeffs()[d].terms()) {
            auto key = std::make_tuple(ni, d, m);
            auto it = rows.emplace(key, rows.size()).first;
            cols[col].push_back({it->second, c.constant_value()});
          }
      }
    };
    for (std::size_t c = 0; c < cand.size(); ++c) collect(cand[c], c);
    collect(g.poly(v), cand.size());
    Mat A = linalg::zeros(rows.size(), cand.size());
    Vec b(rows.size(), Rational(0));
    for (std::size_t c = 0; c < cand.size(); ++c)
      for (const auto& [r, x] : cols[c]) A[r][c] += x;
    for (const auto& [r, x] : cols[cand.size()]) b[r] -= x;
    auto x0 = linalg::solve(A, b);
    if (!x0) throw NoSolution("no W-element with leading term " + g.str(v) + " in weight " + delta.get_str());
    auto null = linalg::nullspace(A, cand.size());
    Vec best = *x0;
    if (!null.empty() && null.size() <= 2) {
      // Minimal support over the affine solution space, found at points fixing |null| coordinates to zero.
      std::vector<Vec> tries{best};
      std::size_t m = cand.size(), d = null.size();
      auto try_zero = [&](const std::vector<std::size_t>& idx) {
        Mat s = linalg::zeros(d, d);
        Vec rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) s[r][c] = null[c][idx[r]];
          rhs[r] = -(*x0)[idx[r]];
        }
        auto t = linalg::solve(s, rhs);
        if (!t || linalg::rank(s) < d) return;
        Vec p = *x0;
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t i = 0; i < m; ++i) p[i] += (*t)[c] * null[c][i];
        tries.push_back(p);
      };
      for (std::size_t i = 0; i < m; ++i) {
        if (d == 1) {
          try_zero({i});
        } else {
          for (std::size_t j = i + 1; j < m; ++j) try_zero({i, j});
        }
      }
      for (const auto& t : tries) {
        auto st = detail::support(t), sb = detail::support(best);
        if (st < sb || (st == sb && detail::lex_less(t, best))) best = t;
      }
    }
    DiffPoly e = g.poly(v);
    for (std::size_t c = 0; c < cand.size(); ++c)
      if (best[c] != 0) e += cand[c] * Scalar(best[c]);
    out.push_back({{lbl, v, e}, cand.size(), null.size()});
  }
  return out;
}

/// One row of the minimal-nilpotent bracket table: engine value against the general formula.
struct FormulaRow {
  std::string family, left, right;
  LambdaPoly engine, formula;
  bool match() const { return engine == formula; }
};

/// Evaluates every applicable instance of the six bracket families for minimal generators built by
/// minimal_generators (labels in their default order: g_f(0), g(−1/2), f).
inline std::vector<FormulaRow> minimal_bracket_rows(const GeneratorFamily& fam) {
  const auto& ctx = fam.context();
  const auto& g = ctx.algebra();
  const Scalar& k = ctx.k();
  MinimalData md = minimal_data(g);
  FZeroPairs pairs = gf_zero_pairs(g);
  auto wbasis = g.grading_component(Rational(-1, 2));
  std::size_t nv = pairs.a.size(), nw = wbasis.size(), fi = nv + nw;
  // φ_u for u ∈ g_f(0) ⊕ g(−1/2), linear in labels.
  auto phi_of = [&](const Vec& u) {
    DiffPoly r(fam.labels());
    Mat y = linalg::zeros(g.dim(), fi);
    for (std::size_t c = 0; c < fi; ++c)
      for (std::size_t i = 0; i < g.dim(); ++i) y[i][c] = fam.generators()[c].leading[i];
    auto sol = linalg::solve(y, u);
    if (!sol) throw Error("vector outside g_f(0) ⊕ g(-1/2): " + g.str(u));
    for (std::size_t c = 0; c < fi; ++c)
      if ((*sol)[c] != 0) r += fam.label(c) * Scalar((*sol)[c]);
    return r;
  };
  auto sharp = [&](const Vec& u) { return projection_sharp(g, u); };
  auto dl = [&](const DiffPoly& p, const Rational& c) {  // −(∂ + cλ) p
    LambdaPoly r(-p.partial());
    r.add(1, -(p * Scalar(c)));
    return r;
  };
  std::vector<FormulaRow> rows;
  auto push = [&](const std::string& fam_name, std::size_t i, std::size_t j, LambdaPoly formula) {
    rows.push_back({fam_name, fam.generators()[i].label, fam.generators()[j].label, fam.bracket(i, j), std::move(formula)});
  };
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < nv; ++j) {
      LambdaPoly f(phi_of(g.bracket(pairs.a[i], pairs.a[j])));
      f.add(1, DiffPoly(k * Scalar(g.form(pairs.a[i], pairs.a[j]))));
      push("{phi_v1 λ phi_v2}", i, j, f);
    }
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < nw; ++j)
      push("{phi_v λ phi_w}", i, nv + j, LambdaPoly(phi_of(g.bracket(pairs.a[i], g.basis(wbasis[j])))));
  for (std::size_t i = 0; i < nv; ++i) push("{phi_f λ phi_v}", fi, i, dl(fam.label(i), 1));
  for (std::size_t j = 0; j < nw; ++j) push("{phi_f λ phi_w}", fi, nv + j, dl(fam.label(nv + j), Rational(3, 2)));
  push("{phi_f λ phi_f}", fi, fi, dl(fam.label(fi), 2));
  Vec e = g.sl2().e;
  for (std::size_t i = 0; i < nw; ++i)
    for (std::size_t j = 0; j < nw; ++j) {
      Vec w1 = g.basis(wbasis[i]), w2 = g.basis(wbasis[j]);
      int sg = (g.parity_of(w1) & g.parity_of(w2)) ? -1 : 1;
      DiffPoly c0 = fam.label(fi);
      for (std::size_t l = 0; l < nv; ++l)
        c0 += phi_of(pairs.a[l]) * phi_of(pairs.b[l]) * (Scalar(Rational(1, 2)) / k);
      c0 *= Scalar(g.form(e, g.bracket(w1, w2)));
      for (std::size_t a = 0; a < md.z.size(); ++a)
        c0 += phi_of(sharp(g.bracket(w2, md.z_star[a]))) * phi_of(sharp(g.bracket(g.basis(md.z[a]), w1))) * Scalar(sg);
      Scalar c2;
      for (std::size_t a = 0; a < md.z.size(); ++a)
        for (std::size_t b = 0; b < md.z.size(); ++b) {
          Vec zz = g.bracket(md.z_star[a], md.z_star[b]);
          // [z*_α, z*_β] ∈ g(1) = C e is read through e ↦ −(f|e) = −1.
          Rational red = -g.form(g.sl2().f, zz);
          c2 -= k * k * Scalar(g.form(g.basis(md.z[a]), w1) * g.form(g.basis(md.z[b]), w2) * red);
        }
      LambdaPoly f(c0);
      f.add(2, DiffPoly(c2));
      push("{phi_w1 λ phi_w2}", nv + i, nv + j, f);
    }
  return rows;
}

}  // namespace wsuper
