#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wsuper/wred.hpp"

namespace wsuper {

/// V_t(g,f,k): differential polynomials in a z^p (0 ≤ p ≤ t) and g(−1) z^{t+1}, modulo the ideal generated by
/// m z^t + (f|m) for m ∈ g(1) and b z^{t+1} + (b|e) for b ∈ g(−1).
class FracContext {
 public:
  FracContext(AlgebraPtr g, unsigned t, Scalar k) : g_(std::move(g)), t_(t), k_(std::move(k)) {
    const auto& G = *g_;
    std::vector<std::string> names;
    std::vector<int> par;
    for (unsigned p = 0; p <= t_; ++p)
      for (std::size_t i = 0; i < G.dim(); ++i) {
        names.push_back(G.name_of(i) + "_z" + std::to_string(p));
        par.push_back(G.parity(i));
      }
    for (auto b : G.grading_component(-1)) {
      top_.push_back(b);
      names.push_back(G.name_of(b) + "_z" + std::to_string(t_ + 1));
      par.push_back(G.parity(b));
    }
    space_ = make_space("V_" + std::to_string(t_) + "(" + G.name() + ")", names, par);
    build_brackets();
  }

  const LieSuperalgebra& algebra() const { return *g_; }
  const AlgebraPtr& algebra_ptr() const { return g_; }
  unsigned t() const { return t_; }
  const Scalar& k() const { return k_; }
  const SpacePtr& space() const { return space_; }
  const LambdaEngine& engine() const { return *engine_; }

  /// Symbol index of basis element i at z^p, or nullopt when a z^p is zero in g_{[t,d]}.
  std::optional<std::size_t> symbol_index(std::size_t i, unsigned p) const {
    if (p <= t_) return p * g_->dim() + i;
    if (p == t_ + 1)
      for (std::size_t j = 0; j < top_.size(); ++j)
        if (top_[j] == i) return (t_ + 1) * g_->dim() + j;
    return std::nullopt;
  }
  /// (basis index, z-power) of a symbol index.
  std::pair<std::size_t, unsigned> locate(std::size_t s) const {
    std::size_t d = g_->dim();
    if (s < (t_ + 1) * d) return {s % d, unsigned(s / d)};
    return {top_[s - (t_ + 1) * d], t_ + 1};
  }

  /// v z^p in g_{[t,d]}, truncated by grading.
  DiffPoly loop(const Vec& v, unsigned p, unsigned order = 0) const {
    DiffPoly out(space_);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      auto s = symbol_index(i, p);
      if (s) out += DiffPoly::symbol(space_, *s, order) * Scalar(v[i]);
    }
    return out;
  }
  DiffPoly loop(const std::string& name, unsigned p, unsigned order = 0) const {
    return loop(g_->vec(name), p, order);
  }

  DiffPoly reduce(const DiffPoly& A) const {
    const auto& G = *g_;
    return A.substitute([&](Sym s) -> std::optional<DiffPoly> {
      auto [i, p] = locate(sym_gen(s));
      if (p == t_ && G.grade(i) == 1) {
        if (sym_order(s) > 0) return DiffPoly();
        return DiffPoly(Scalar(-G.form(G.sl2().f, G.basis(i))));
      }
      if (p == t_ + 1) {
        if (sym_order(s) > 0) return DiffPoly();
        return DiffPoly(Scalar(-G.form(G.basis(i), G.sl2().e)));
      }
      return std::nullopt;
    });
  }
  LambdaPoly reduce(const LambdaPoly& A) const {
    return A.map([&](const DiffPoly& p) { return reduce(p); });
  }

  LambdaPoly bracket(const DiffPoly& A, const DiffPoly& B) const { return reduce(engine_->bracket(A, B)); }

  /// ad_λ n (a z^p) = [n,a] z^p + δ_{p,0} kλ(n|a), extended as a derivation with sesquilinearity.
  LambdaPoly ad_lambda(const Vec& n, const DiffPoly& A) const { return reduce(ad_->bracket(loop(n, 0), A)); }

  Membership is_w_element(const DiffPoly& A) const {
    const auto& G = *g_;
    for (std::size_t i = 0; i < G.dim(); ++i) {
      if (G.grade(i) <= 0) continue;
      LambdaPoly r = ad_lambda(G.basis(i), A);
      if (!r.is_zero()) {
        std::size_t d = 0;
        while (r.coeff(d).is_zero()) ++d;
        return {false, G.name_of(i), d, r.coeff(d)};
      }
    }
    return {};
  }

  /// Finite shadow: the derivative-free Poisson bracket of S(g_{[t,d]}) (same table, k = 0, λ = 0).
  DiffPoly finite_bracket(const DiffPoly& A, const DiffPoly& B) const {
    return reduce(finite_->bracket(A, B).coeff(0));
  }

  /// {a z^p, b z^q} in g_{[t,d]} with the sign-flipped rule on positive powers; k-term dropped.
  DiffPoly loop_bracket(const Vec& a, unsigned p, const Vec& b, unsigned q) const {
    if (p == 0 && q == 0) return loop(g_->bracket(a, b), 0);
    if (p == 0 || q == 0) return DiffPoly(space_);
    return -loop(g_->bracket(a, b), p + q);
  }

 private:
  void build_brackets() {
    const auto& G = *g_;
    BaseBracket base(space_), ad(space_), fin(space_);
    std::size_t n = space_->size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        auto [a, p] = locate(x);
        auto [b, q] = locate(y);
        Vec va = G.basis(a), vb = G.basis(b);
        DiffPoly br = loop_bracket(va, p, vb, q);
        LambdaPoly v(br);
        fin.set(x, y, v, false);
        if (p == 0 && q == 0) v.add(1, DiffPoly(k_ * Scalar(G.form(va, vb))));
        base.set(x, y, v, false);
        if (p == 0) {
          LambdaPoly w(loop(G.bracket(va, vb), q));
          if (q == 0) w.add(1, DiffPoly(k_ * Scalar(G.form(va, vb))));
          ad.set(x, y, w, false);
        }
      }
    engine_ = std::make_shared<const LambdaEngine>(std::move(base));
    ad_ = std::make_shared<const LambdaEngine>(std::move(ad));
    finite_ = std::make_shared<const LambdaEngine>(std::move(fin));
  }

  AlgebraPtr g_;
  unsigned t_;
  Scalar k_;
  std::vector<std::size_t> top_;
  SpacePtr space_;
  std::shared_ptr<const LambdaEngine> engine_, ad_, finite_;
};

inline FracContext build_frac(AlgebraPtr g, unsigned t, Scalar k) { return FracContext(std::move(g), t, std::move(k)); }

/// η̄'(c z^p) = Σ_s (−1)^s/s! Σ_{α_i ∈ S(1/2)∪{0}} (Π z*_{α_i} z^t) [z_{α_s}, … [z_{α_1}, c] …] z^p, with z*_0 = x,
/// z_0 = e; not reduced.
inline DiffPoly eta_prime_raw(const FracContext& ctx, const Vec& c, unsigned p) {
  const auto& g = ctx.algebra();
  MinimalData md = minimal_data(g);
  std::vector<Vec> zs{g.sl2().e}, zstars{g.sl2().x};
  for (std::size_t a = 0; a < md.z.size(); ++a) {
    zs.push_back(g.basis(md.z[a]));
    zstars.push_back(md.z_star[a]);
  }
  DiffPoly out = ctx.loop(c, p);
  struct Partial {
    DiffPoly prod;
    Vec v;
  };
  std::vector<Partial> layer{{DiffPoly(Scalar(1)), c}};
  Rational coef = 1;
  for (unsigned s = 1; !layer.empty(); ++s) {
    coef = -coef / s;
    std::vector<Partial> next;
    for (const auto& P : layer)
      for (std::size_t a = 0; a < zs.size(); ++a) {
        Vec nv = g.bracket(zs[a], P.v);
        if (is_zero(nv)) continue;
        DiffPoly prod = P.prod * ctx.loop(zstars[a], ctx.t());
        if (prod.is_zero()) continue;
        out += prod * ctx.loop(nv, p) * Scalar(coef);
        next.push_back({prod, nv});
      }
    layer = std::move(next);
  }
  return out;
}

inline DiffPoly eta_prime(const FracContext& ctx, const Vec& c, unsigned p) {
  return ctx.reduce(eta_prime_raw(ctx, c, p));
}

struct FracGenerator {
  std::string label;
  Vec vec;
  unsigned power;
  DiffPoly element;
};

/// η_t on G_t = ⊕_{p<t} g z^p ⊕ g_f z^t for minimal f; output ordered by power, then basis.
inline std::vector<FracGenerator> frac_generators(const FracContext& ctx) {
  const auto& g = ctx.algebra();
  if (ctx.t() < 1) throw Error("fractional generators need t >= 1");
  MinimalData md = minimal_data(g);
  const Scalar& k = ctx.k();
  unsigned t = ctx.t();
  auto L = [&](const Vec& v, unsigned p, unsigned order = 0) { return ctx.loop(v, p, order); };
  auto name = [&](const Vec& v, unsigned p, std::size_t fallback) {
    std::string l = default_label(g, v, fallback);
    return "eta_" + l.substr(4) + "_z" + std::to_string(p);
  };
  std::vector<FracGenerator> out;
  for (unsigned p = 0; p < t; ++p)
    for (std::size_t i = 0; i < g.dim(); ++i) {
      Vec v = g.basis(i);
      DiffPoly e = eta_prime_raw(ctx, v, p);
      if (p == 0 && g.grade(i) == Rational(-1, 2))
        for (std::size_t a = 0; a < md.z.size(); ++a)
          e -= L(md.z_star[a], t, 1) * (k * Scalar(g.form(g.basis(md.z[a]), v)));
      out.push_back({name(v, p, i), v, p, ctx.reduce(e)});
    }
  std::size_t counter = 0;
  for (const auto& v : gf_zero_pairs(g).a) {
    DiffPoly e = L(v, t);
    for (std::size_t a = 0; a < md.z.size(); ++a)
      e -= L(md.z_star[a], t) * L(g.bracket(g.basis(md.z[a]), v), t) * Scalar(Rational(1, 2));
    out.push_back({name(v, t, counter++), v, t, ctx.reduce(e)});
  }
  for (auto wi : g.grading_component(Rational(-1, 2))) {
    Vec w = g.basis(wi);
    DiffPoly e = L(w, t);
    for (std::size_t a = 0; a < md.z.size(); ++a) {
      Vec za = g.basis(md.z[a]);
      e -= L(md.z_star[a], t) * L(g.bracket(za, w), t);
      for (std::size_t b = 0; b < md.z.size(); ++b)
        e += L(md.z_star[a], t) * L(md.z_star[b], t) * L(g.bracket(g.basis(md.z[b]), g.bracket(za, w)), t) *
             Scalar(Rational(1, 3));
    }
    out.push_back({name(w, t, counter++), w, t, ctx.reduce(e)});
  }
  // f-generators: η(f z^p) gets −kδ_{p,0}(∂(x z^t) − ½Σ ∂(z*_α z^t) z_α z^t).
  for (auto& G : out)
    if (G.power == 0 && G.vec == g.sl2().f) {
      DiffPoly c = L(g.sl2().x, t, 1);
      for (std::size_t a = 0; a < md.z.size(); ++a)
        c -= L(md.z_star[a], t, 1) * L(g.basis(md.z[a]), t) * Scalar(Rational(1, 2));
      G.element = ctx.reduce(G.element - c * k);
    }
  out.push_back({name(g.sl2().f, t, counter++), g.sl2().f, t, eta_prime(ctx, g.sl2().f, t)});
  return out;
}

/// Generator family of W_t with re-expression in η labels.
class FracFamily {
 public:
  explicit FracFamily(std::shared_ptr<const FracContext> ctx) : ctx_(std::move(ctx)), gens_(frac_generators(*ctx_)) {
    const auto& g = ctx_->algebra();
    std::vector<std::string> names;
    std::vector<int> par;
    for (const auto& G : gens_) {
      names.push_back(G.label);
      par.push_back(g.parity_of(G.vec));
    }
    labels_ = make_space("generators of W_" + std::to_string(ctx_->t()) + "(" + g.name() + ")", names, par);
    unsigned t = ctx_->t();
    std::size_t top = 0;
    while (top < gens_.size() && gens_[top].power < t) ++top;
    Mat y = linalg::zeros(g.dim(), gens_.size() - top);
    for (std::size_t c = top; c < gens_.size(); ++c)
      for (std::size_t i = 0; i < g.dim(); ++i) y[i][c - top] = gens_[c].vec[i];
    coord_.assign(ctx_->space()->size(), DiffPoly());
    for (std::size_t s = 0; s < ctx_->space()->size(); ++s) {
      auto [i, p] = ctx_->locate(s);
      if (p < t) {
        coord_[s] = DiffPoly::symbol(labels_, p * g.dim() + i, 0);
      } else if (p == t) {
        auto sol = linalg::solve(y, centralizer_component(g, g.basis(i)));
        if (!sol) throw NotTriangular("g_f z^t is not spanned by the top generators");
        DiffPoly lin(labels_);
        for (std::size_t c = 0; c < sol->size(); ++c)
          if ((*sol)[c] != 0) lin += DiffPoly::symbol(labels_, top + c, 0) * Scalar((*sol)[c]);
        coord_[s] = lin;
      }
    }
    std::vector<DiffPoly> images;
    for (const auto& G : gens_) images.push_back(iota(G.element));
    inverse_ = triangular_inverse(labels_, images, std::vector<Rational>(gens_.size(), Rational(0)));
  }

  const FracContext& context() const { return *ctx_; }
  const std::vector<FracGenerator>& generators() const { return gens_; }
  const SpacePtr& labels() const { return labels_; }
  DiffPoly label(std::size_t i, unsigned order = 0) const { return DiffPoly::symbol(labels_, i, order); }

  /// Index of the generator η(c z^p) for a basis vector or g_f vector c, if present.
  std::optional<std::size_t> find(const Vec& c, unsigned p) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].power == p && gens_[i].vec == c) return i;
    return std::nullopt;
  }

  /// η_t(c z^p) as a linear polynomial in labels; nullopt when c z^p lies outside G_t ⊕ (reduced layers).
  std::optional<DiffPoly> eta(const Vec& c, unsigned p) const {
    const auto& g = ctx_->algebra();
    unsigned t = ctx_->t();
    if (p > t) return ctx_->reduce(ctx_->loop(c, p)).with_space(labels_);
    DiffPoly out(labels_);
    if (p < t) {
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) out += label(p * g.dim() + i) * Scalar(c[i]);
      return out;
    }
    std::size_t top = p * g.dim();
    Mat y = linalg::zeros(g.dim(), gens_.size() - top);
    for (std::size_t j = top; j < gens_.size(); ++j)
      for (std::size_t i = 0; i < g.dim(); ++i) y[i][j - top] = gens_[j].vec[i];
    auto sol = linalg::solve(y, c);
    if (!sol) return std::nullopt;
    for (std::size_t j = 0; j < sol->size(); ++j)
      if ((*sol)[j] != 0) out += label(top + j) * Scalar((*sol)[j]);
    return out;
  }

  DiffPoly iota(const DiffPoly& A) const {
    if (A.is_constant()) return DiffPoly(A.constant_term());
    return A.substitute([&](Sym s) -> std::optional<DiffPoly> { return coord_[sym_gen(s)].partial(sym_order(s)); });
  }

  DiffPoly evaluate(const DiffPoly& P) const {
    if (P.is_constant()) return DiffPoly(P.constant_term());
    return ctx_->reduce(P.substitute([&](Sym s) -> std::optional<DiffPoly> {
      return gens_[sym_gen(s)].element.partial(sym_order(s));
    }));
  }

  DiffPoly express(const DiffPoly& A) const {
    DiffPoly red = ctx_->reduce(A);
    DiffPoly out = iota(red).substitute(
        [&](Sym s) -> std::optional<DiffPoly> { return inverse_[sym_gen(s)].partial(sym_order(s)); });
    if (evaluate(out) != red) throw NotTriangular("element is not a polynomial in the η generators: " + red.str());
    return out.is_constant() ? DiffPoly(out.constant_term()) : out.with_space(labels_);
  }
  LambdaPoly express(const LambdaPoly& A) const {
    return A.map_into(labels_, [&](const DiffPoly& p) { return express(p); });
  }

  LambdaPoly bracket(std::size_t i, std::size_t j) const {
    return express(ctx_->bracket(gens_[i].element, gens_[j].element));
  }

 private:
  std::shared_ptr<const FracContext> ctx_;
  std::vector<FracGenerator> gens_;
  SpacePtr labels_;
  std::vector<DiffPoly> coord_;
  std::vector<DiffPoly> inverse_;
};

struct FracRow {
  std::string family, left, right;
  LambdaPoly engine, formula;
  bool match() const { return engine == formula; }
};

/// Instances of the five bracket families of W_t for which every η on the right side is defined. The fourth family is
/// restricted to g ∈ ⊕_{i>−1}g(i) at p = 1 unless `include_edge` is set.
inline std::vector<FracRow> frac_bracket_rows(const FracFamily& fam, bool include_edge = false) {
  const auto& ctx = fam.context();
  const auto& g = ctx.algebra();
  const Scalar& k = ctx.k();
  const Vec &e = g.sl2().e, &x = g.sl2().x, &f = g.sl2().f;
  std::vector<FracRow> rows;
  auto push = [&](const std::string& name, std::size_t i, std::size_t j, LambdaPoly formula) {
    const auto& G = fam.generators();
    rows.push_back({name, G[i].label, G[j].label, fam.bracket(i, j), std::move(formula)});
  };
  auto fz = fam.find(f, 1);
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      Vec ga = g.basis(a), gb = g.basis(b);
      auto rhs = fam.eta(g.bracket(ga, gb), 0);
      LambdaPoly F(*rhs);
      F.add(1, DiffPoly(k * Scalar(g.form(ga, gb))));
      push("{eta(g1) λ eta(g2)}", *fam.find(ga, 0), *fam.find(gb, 0), F);
    }
  if (!fz) return rows;
  if (auto f0 = fam.find(f, 0)) {
    LambdaPoly F(-*fam.eta(scale(x, 2), 0));
    F.add(1, DiffPoly(-k));
    push("{eta(fz) λ eta(f)}", *fz, *f0, F);
  }
  for (std::size_t b = 0; b < g.dim(); ++b) {
    if (g.grade(b) <= -1) continue;
    auto rhs = fam.eta(g.bracket(e, g.basis(b)), 0);
    push("{eta(fz) λ eta(g)}", *fz, *fam.find(g.basis(b), 0), LambdaPoly(-*rhs));
  }
  for (std::size_t j = 0; j < fam.generators().size(); ++j) {
    const auto& G = fam.generators()[j];
    if (G.power < 1) continue;
    if (G.power == 1 && !include_edge && g.grade_of(G.vec) <= -1) continue;
    auto r1 = fam.eta(g.bracket(f, G.vec), G.power + 1);
    auto r2 = fam.eta(g.bracket(e, G.vec), G.power);
    if (!r1 || !r2) continue;
    push("{eta(fz) λ eta(g z^p)}", *fz, j, LambdaPoly(-*r1 - *r2));
  }
  for (std::size_t i = 0; i < fam.generators().size(); ++i)
    for (std::size_t j = 0; j < fam.generators().size(); ++j) {
      const auto &A = fam.generators()[i], &B = fam.generators()[j];
      auto in_range = [&](const FracGenerator& G) {
        if (G.power >= 2) return true;
        if (G.power != 1) return false;
        for (std::size_t q = 0; q < g.dim(); ++q)
          if (G.vec[q] != 0 && g.grade(q) <= -1) return false;
        return true;
      };
      if (!in_range(A) || !in_range(B)) continue;
      auto rhs = fam.eta(g.bracket(A.vec, B.vec), A.power + B.power);
      if (!rhs) continue;
      push("{eta(g1 z^p) λ eta(g2 z^q)}", i, j, LambdaPoly(-*rhs));
    }
  return rows;
}

/// {η̄'(g1 z^p), η̄'(g2 z^q)} ≡ η̄'({g1 z^p, g2 z^q}) mod I^fin over the stated ranges.
inline CheckReport check_frac_lemma_brackets(const FracContext& ctx) {
  const auto& g = ctx.algebra();
  CheckReport rep{"finite shadow of the η' bracket lemma"};
  auto ok = [&](std::size_t i, unsigned p) { return p != 1 || g.grade(i) > -1; };
  auto lin_eta = [&](const DiffPoly& lin) {
    // η̄' applied to a linear loop element.
    DiffPoly out;
    for (const auto& [m, c] : lin.terms()) {
      if (m.empty()) {
        out += DiffPoly(c);
        continue;
      }
      auto [i, p] = ctx.locate(sym_gen(m[0]));
      out += eta_prime_raw(ctx, g.basis(i), p) * c;
    }
    return ctx.reduce(out);
  };
  for (unsigned p = 0; p <= ctx.t(); ++p)
    for (unsigned q = 0; q <= ctx.t(); ++q)
      for (std::size_t a = 0; a < g.dim(); ++a)
        for (std::size_t b = 0; b < g.dim(); ++b) {
          if (!ok(a, p) || !ok(b, q)) continue;
          ++rep.checked;
          DiffPoly lhs = ctx.finite_bracket(eta_prime_raw(ctx, g.basis(a), p), eta_prime_raw(ctx, g.basis(b), q));
          DiffPoly rhs = lin_eta(ctx.loop_bracket(g.basis(a), p, g.basis(b), q));
          if (lhs != rhs)
            rep.fail(g.name_of(a) + "_z" + std::to_string(p) + ", " + g.name_of(b) + "_z" + std::to_string(q) + ": " +
                     (lhs - rhs).str());
        }
  return rep;
}

/// {η̄'(fz), η̄'(g z^p)} ≡ −η̄'([e, g z^p]) + η̄'({fz, g z^p}) mod I^fin, with g ∈ ⊕_{i>−1}g(i) at p = 1 unless
/// `include_edge` is set.
inline CheckReport check_frac_lemma_fz(const FracContext& ctx, bool include_edge = false) {
  const auto& g = ctx.algebra();
  CheckReport rep{"finite shadow of the f z bracket lemma"};
  const Vec &e = g.sl2().e, &f = g.sl2().f;
  DiffPoly efz = eta_prime_raw(ctx, f, 1);
  auto lin_eta = [&](const DiffPoly& lin) {
    DiffPoly out;
    for (const auto& [m, c] : lin.terms()) {
      if (m.empty()) {
        out += DiffPoly(c);
        continue;
      }
      auto [i, p] = ctx.locate(sym_gen(m[0]));
      out += eta_prime_raw(ctx, g.basis(i), p) * c;
    }
    return ctx.reduce(out);
  };
  for (unsigned p = 0; p <= ctx.t(); ++p)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      if (p == 1 && !include_edge && g.grade(b) <= -1) continue;
      ++rep.checked;
      DiffPoly lhs = ctx.finite_bracket(efz, eta_prime_raw(ctx, g.basis(b), p));
      DiffPoly rhs = lin_eta(ctx.loop_bracket(f, 1, g.basis(b), p)) - lin_eta(ctx.loop(g.bracket(e, g.basis(b)), p));
      if (lhs != rhs) rep.fail(g.name_of(b) + "_z" + std::to_string(p) + ": " + (lhs - rhs).str());
    }
  return rep;
}

}  // namespace wsuper
