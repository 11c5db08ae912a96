#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wsuper/wred.hpp"

namespace wsuper {

/// Elements of S(g_{<1}) after reduction: DiffPolys with no derivative symbols.
using FinitePoly = DiffPoly;

/// ∂ⁿa ↦ δ_{n0} a.
inline FinitePoly zhu_project(const DiffPoly& A) {
  return A.substitute([](Sym s) -> std::optional<DiffPoly> {
    if (sym_order(s) > 0) return DiffPoly();
    return std::nullopt;
  });
}

inline bool is_finite(const DiffPoly& A) {
  for (const auto& [m, c] : A.terms())
    for (Sym s : m)
      if (sym_order(s) > 0) return false;
  return true;
}

/// ψ_v, ψ_w and ψ_f for a minimal nilpotent, with ψ_f = −Σ u_α ũ^α, ũ^α the dual basis with (ũ^α|u_β) = δ.
inline std::vector<Generator> finite_minimal_generators(const ReductionContext& ctx) {
  const auto& g = ctx.algebra();
  MinimalData md = minimal_data(g);
  auto P = [&](const Vec& v) { return g.poly(v); };
  std::vector<Generator> out;
  std::size_t counter = 0;
  auto label = [&](const Vec& v) {
    std::string l = default_label(g, v, counter++);
    return "psi" + l.substr(3);
  };
  for (const auto& v : gf_zero_pairs(g).a) {
    DiffPoly e = P(v);
    for (std::size_t a = 0; a < md.z.size(); ++a)
      e -= P(md.z_star[a]) * P(g.bracket(g.basis(md.z[a]), v)) * Scalar(Rational(1, 2));
    out.push_back({label(v), v, ctx.reduce(e)});
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
    }
    out.push_back({label(w), w, ctx.reduce(e)});
  }
  Mat dual = dual_bases(g);
  DiffPoly cas;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    Vec left_dual = g.parity(a) ? scale(dual[a], Rational(-1)) : dual[a];
    cas -= P(g.basis(a)) * P(left_dual);
  }
  out.push_back({label(g.sl2().f), g.sl2().f, ctx.reduce(cas)});
  return out;
}

/// [n, ψ] in S(g)/I^fin for the Lie–Poisson bracket of S(g); zero for every n ∈ 𝔫 iff ψ ∈ W^fin.
inline Membership is_finite_w_element(const ReductionContext& ctx, const FinitePoly& psi) {
  if (!is_finite(psi)) throw Error("finite W-elements carry no derivatives");
  const auto& g = ctx.algebra();
  LambdaEngine lie(current_base(g, Scalar(0)));
  for (auto i : ctx.nilpotent()) {
    DiffPoly r = ctx.reduce(lie.bracket(g.poly(g.basis(i)), psi).coeff(0));
    if (!r.is_zero()) return {false, g.name_of(i), 0, r};
  }
  return {};
}

/// W^fin(g,f) realized as the Zhu image of an affine generator family, with brackets computed by lift, affine
/// bracket at λ = 0 and projection.
class FiniteWAlgebra {
 public:
  explicit FiniteWAlgebra(std::shared_ptr<const GeneratorFamily> fam) : fam_(std::move(fam)) {
    const auto& gens = fam_->generators();
    std::vector<std::string> names;
    std::vector<int> par;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string l = gens[i].label;
      names.push_back(l.rfind("phi", 0) == 0 ? "psi" + l.substr(3) : "psi(" + l + ")");
      par.push_back(fam_->labels()->parity(i));
      psi_.push_back(zhu_project(gens[i].element));
    }
    labels_ = make_space("generators of W_fin(" + fam_->context().algebra().name() + ")", names, par);
    std::vector<DiffPoly> images;
    for (const auto& p : psi_) images.push_back(relabel(fam_->iota(p)));
    inverse_ = triangular_inverse(labels_, images, fam_->weights());
    BaseBracket base(labels_);
    for (std::size_t i = 0; i < psi_.size(); ++i)
      for (std::size_t j = 0; j < psi_.size(); ++j)
        base.set(i, j, LambdaPoly(express(finite_bracket(psi_[i], psi_[j]))), false);
    engine_ = std::make_shared<const LambdaEngine>(std::move(base));
  }

  const GeneratorFamily& family() const { return *fam_; }
  const SpacePtr& labels() const { return labels_; }
  const std::vector<FinitePoly>& generators() const { return psi_; }
  DiffPoly label(std::size_t i) const { return DiffPoly::symbol(labels_, i, 0); }

  /// Finite element as a polynomial in the ψ labels; throws NoLift when it lies outside W^fin.
  DiffPoly express(const FinitePoly& w) const {
    if (!is_finite(w)) throw NoLift("finite elements carry no derivatives");
    DiffPoly red = fam_->context().reduce(w);
    DiffPoly out = relabel(fam_->iota(red)).substitute(
        [&](Sym s) -> std::optional<DiffPoly> { return inverse_[sym_gen(s)]; });
    if (evaluate(out) != red) throw NoLift("no lift for " + red.str());
    return out.with_space(labels_);
  }

  FinitePoly evaluate(const DiffPoly& P) const {
    if (P.is_constant()) return DiffPoly(P.constant_term());
    return fam_->context().reduce(
        P.substitute([&](Sym s) -> std::optional<DiffPoly> { return psi_[sym_gen(s)]; }));
  }

  /// An affine W-element with the given Zhu image.
  DiffPoly lift(const FinitePoly& w) const {
    DiffPoly P = express(w);
    if (P.is_constant()) return DiffPoly(P.constant_term());
    return P.substitute([&](Sym s) -> std::optional<DiffPoly> { return fam_->generators()[sym_gen(s)].element; });
  }

  FinitePoly finite_bracket(const FinitePoly& w1, const FinitePoly& w2) const {
    const auto& ctx = fam_->context();
    return zhu_project(ctx.bracket(lift(w1), lift(w2)).coeff(0));
  }

  /// The Poisson bracket on label polynomials.
  DiffPoly bracket_labels(const DiffPoly& P, const DiffPoly& Q) const { return engine_->bracket(P, Q).coeff(0); }
  const LambdaEngine& engine() const { return *engine_; }

 private:
  DiffPoly relabel(const DiffPoly& p) const {
    if (p.is_constant()) return DiffPoly(p.constant_term());
    return p.substitute([&](Sym s) -> std::optional<DiffPoly> {
      if (sym_order(s) > 0) return DiffPoly();
      return DiffPoly::symbol(labels_, sym_gen(s), 0);
    });
  }

  std::shared_ptr<const GeneratorFamily> fam_;
  SpacePtr labels_;
  std::vector<FinitePoly> psi_;
  std::vector<DiffPoly> inverse_;
  std::shared_ptr<const LambdaEngine> engine_;
};

/// {v_a, v_b} = v_{[a,b]} for the twisted-Zhu bracket {u_α,u_β} = [u_α,u_β] − j_α k(u_α|u_β), v_a = a − k(x|a).
inline CheckReport check_zhu_current(const LieSuperalgebra& g, const Scalar& k) {
  CheckReport rep{"twisted Zhu bracket of the current algebra"};
  const Vec& x = g.sl2().x;
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      ++rep.checked;
      Vec ua = g.basis(a), ub = g.basis(b), ab = g.bracket(ua, ub);
      DiffPoly lhs = g.poly(ab) - DiffPoly(k * Scalar(g.grade(a) * g.form(ua, ub)));
      DiffPoly rhs = g.poly(ab) - DiffPoly(k * Scalar(g.form(x, ab)));
      if (lhs != rhs)
        rep.fail("{v_" + g.name_of(a) + ", v_" + g.name_of(b) + "}: " + lhs.str() + " != " + rhs.str());
    }
  return rep;
}

}  // namespace wsuper
