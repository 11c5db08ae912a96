#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wsuper/lambda.hpp"
#include "wsuper/superalgebra.hpp"

namespace wsuper {

/// S(R) for R = Cur_k(g) ⊕ R_ch ⊕ R_ne together with d, L, J_a and K_a.
/// Generator names: u_α keeps its name, φ_α is "phi_<name>", φ^α is "phid_<name>", Φ_α is "Phi_<name>".
class BrstComplex {
 public:
  BrstComplex(AlgebraPtr alg, Scalar k) : g_(std::move(alg)), k_(std::move(k)) {
    const auto& g = *g_;
    std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i) {
      if (g.grade(i) > 0) S_.push_back(i);
      if (g.grade(i) == Rational(1, 2)) S_half_.push_back(i);
    }
    std::vector<std::string> names = g.names();
    std::vector<int> par;
    for (std::size_t i = 0; i < n; ++i) par.push_back(g.parity(i));
    phi_.assign(n, npos);
    phid_.assign(n, npos);
    Phi_.assign(n, npos);
    for (auto a : S_) {
      phi_[a] = names.size();
      names.push_back("phi_" + g.name_of(a));
      par.push_back(g.parity(a) ^ 1);
    }
    for (auto a : S_) {
      phid_[a] = names.size();
      names.push_back("phid_" + g.name_of(a));
      par.push_back(g.parity(a) ^ 1);
    }
    for (auto a : S_half_) {
      Phi_[a] = names.size();
      names.push_back("Phi_" + g.name_of(a));
      par.push_back(g.parity(a));
    }
    space_ = make_space("BRST " + g.name(), names, par);
    dual_ = dual_bases(g);

    BaseBracket base(space_);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        LambdaPoly v(space_);
        v.add(0, u(g.structure(a, b)));
        v.add(1, DiffPoly(k_ * Scalar(g.form(g.basis(a), g.basis(b)))));
        base.set(a, b, v, false);
      }
    for (auto a : S_)
      for (auto b : S_) {
        Rational c = g.form(g.basis(a), dual_[b]);
        if (c != 0) base.set(phi_[a], phid_[b], LambdaPoly(DiffPoly(Scalar(c))), true);
      }
    for (auto a : S_half_)
      for (auto b : S_half_) {
        Rational c = g.form(g.sl2().f, g.bracket(g.basis(a), g.basis(b)));
        if (c != 0) base.set(Phi_[a], Phi_[b], LambdaPoly(DiffPoly(Scalar(c))), false);
      }
    engine_ = std::make_shared<const LambdaEngine>(std::move(base));
    build_elements();
  }

  const LieSuperalgebra& algebra() const { return *g_; }
  const AlgebraPtr& algebra_ptr() const { return g_; }
  const Scalar& k() const { return k_; }
  const SpacePtr& space() const { return space_; }
  const LambdaEngine& engine() const { return *engine_; }
  const std::vector<std::size_t>& S() const { return S_; }
  const std::vector<std::size_t>& S_half() const { return S_half_; }
  const Mat& dual() const { return dual_; }

  std::size_t phi_index(std::size_t a) const { return phi_.at(a); }
  std::size_t phid_index(std::size_t a) const { return phid_.at(a); }
  std::size_t Phi_index(std::size_t a) const { return Phi_.at(a); }

  int s(std::size_t a) const { return g_->parity(a) ? -1 : 1; }

  /// Vector of g as a current.
  DiffPoly u(const Vec& v, unsigned order = 0) const {
    DiffPoly r(space_);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) r += DiffPoly::symbol(space_, i, order) * Scalar(v[i]);
    return r;
  }
  /// φ_y = φ_{π₊ y}.
  DiffPoly phi(const Vec& y, unsigned order = 0) const {
    DiffPoly r(space_);
    for (auto a : S_)
      if (y[a] != 0) r += DiffPoly::symbol(space_, phi_[a], order) * Scalar(y[a]);
    return r;
  }
  /// φ^y = Σ_α (u_α|y) φ^α, which only sees the n₋ component of y.
  DiffPoly phid(const Vec& y, unsigned order = 0) const {
    DiffPoly r(space_);
    for (auto a : S_) {
      Rational c = g_->form(g_->basis(a), y);
      if (c != 0) r += DiffPoly::symbol(space_, phid_[a], order) * Scalar(c);
    }
    return r;
  }
  /// φ^α = φ^{u^α} for α ∈ S.
  DiffPoly phid_sym(std::size_t a, unsigned order = 0) const { return DiffPoly::symbol(space_, phid_.at(a), order); }
  /// Φ_y = Φ_{π_{1/2} y}.
  DiffPoly Phi(const Vec& y, unsigned order = 0) const {
    DiffPoly r(space_);
    for (auto a : S_half_)
      if (y[a] != 0) r += DiffPoly::symbol(space_, Phi_[a], order) * Scalar(y[a]);
    return r;
  }

  Vec pi_plus(const Vec& y) const {
    Vec r = g_->zero();
    for (auto a : S_) r[a] = y[a];
    return r;
  }
  Vec pi_leq(const Vec& y) const {
    Vec r = g_->zero();
    for (std::size_t i = 0; i < y.size(); ++i)
      if (g_->grade(i) <= 0) r[i] = y[i];
    return r;
  }

  const DiffPoly& d() const { return d_; }
  const DiffPoly& L_g() const { return L_g_; }
  const DiffPoly& L_ch() const { return L_ch_; }
  const DiffPoly& L_ne() const { return L_ne_; }
  DiffPoly L() const { return L_g_ + L_ch_ + L_ne_; }

  /// J_a = a + Σ φ^α φ_{[u_α, a]}.
  DiffPoly J(const Vec& a) const {
    DiffPoly r = u(a);
    for (auto al : S_) r += phid_sym(al) * phi(g_->bracket(g_->basis(al), a));
    return r;
  }
  /// K_a = J_{π≤ a} − s(a) Φ_a − (a|f) for homogeneous a.
  DiffPoly K(const Vec& a) const {
    int sa = g_->parity_of(a) ? -1 : 1;
    return J(pi_leq(a)) - Phi(a) * Scalar(sa) - DiffPoly(Scalar(g_->form(a, g_->sl2().f)));
  }

  LambdaPoly bracket(const DiffPoly& a, const DiffPoly& b) const { return engine_->bracket(a, b); }

  /// d₍₀₎ A = {d_λ A}|_{λ=0}.
  DiffPoly apply_d0(const DiffPoly& A) const { return engine_->bracket(d_, A).at_zero(); }

  /// Conformal weights Δ of the generators of R.
  std::vector<Rational> weights() const {
    std::vector<Rational> w(space_->size());
    for (std::size_t i = 0; i < g_->dim(); ++i) w[i] = 1 - g_->grade(i);
    for (auto a : S_) {
      w[phi_[a]] = 1 - g_->grade(a);
      w[phid_[a]] = g_->grade(a);
    }
    for (auto a : S_half_) w[Phi_[a]] = Rational(1, 2);
    return w;
  }

  /// Basis v^β of g(1/2) with (f|[u_α, v^β]) = δ_{αβ}.
  std::vector<Vec> neutral_dual() const {
    std::size_t r = S_half_.size();
    Mat b = linalg::zeros(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        b[i][j] = g_->form(g_->sl2().f, g_->bracket(g_->basis(S_half_[i]), g_->basis(S_half_[j])));
    Mat c = linalg::inverse(linalg::transpose(b));
    std::vector<Vec> out;
    for (std::size_t i = 0; i < r; ++i) {
      Vec v = g_->zero();
      for (std::size_t j = 0; j < r; ++j) v = add(v, scale(g_->basis(S_half_[j]), c[i][j]));
      out.push_back(v);
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = std::size_t(-1);

  void build_elements() {
    const auto& g = *g_;
    d_ = DiffPoly(space_);
    for (auto a : S_) d_ += phid_sym(a) * u(g.basis(a)) * Scalar(s(a));
    for (auto a : S_half_) d_ += phid_sym(a) * Phi(g.basis(a));
    d_ += phid(g.sl2().f);
    for (auto a : S_)
      for (auto b : S_)
        d_ += phid_sym(a) * phid_sym(b) * phi(g.bracket(g.basis(b), g.basis(a))) *
              Scalar(Rational(s(a), 2));

    L_g_ = u(g.sl2().x, 1);
    Scalar half_inv_k = Scalar(Rational(1, 2)) / k_;
    for (std::size_t a = 0; a < g.dim(); ++a) L_g_ += u(dual_[a]) * u(g.basis(a)) * half_inv_k;

    L_ch_ = DiffPoly(space_);
    for (auto a : S_) {
      Rational j = g.grade(a);
      L_ch_ -= phid_sym(a) * phi(g.basis(a), 1) * Scalar(j);
      L_ch_ += phid_sym(a, 1) * phi(g.basis(a)) * Scalar(1 - j);
    }

    L_ne_ = DiffPoly(space_);
    auto v = neutral_dual();
    for (std::size_t i = 0; i < S_half_.size(); ++i)
      L_ne_ += Phi(v[i], 1) * Phi(g.basis(S_half_[i])) * Scalar(Rational(1, 2));
  }

  AlgebraPtr g_;
  Scalar k_;
  SpacePtr space_;
  std::shared_ptr<const LambdaEngine> engine_;
  std::vector<std::size_t> S_, S_half_;
  std::vector<std::size_t> phi_, phid_, Phi_;
  Mat dual_;
  DiffPoly d_, L_g_, L_ch_, L_ne_;
};

inline BrstComplex build_brst(AlgebraPtr alg, const Scalar& k) { return BrstComplex(std::move(alg), k); }

inline CheckReport check_d_squared(const BrstComplex& c) {
  CheckReport rep{"d squared"};
  ++rep.checked;
  if (c.d().parity() != 1) rep.fail("d is not odd");
  LambdaPoly dd = c.bracket(c.d(), c.d());
  ++rep.checked;
  if (!dd.is_zero()) rep.fail("{d λ d} = " + dd.str());
  for (std::size_t i = 0; i < c.space()->size(); ++i) {
    ++rep.checked;
    DiffPoly x = DiffPoly::symbol(c.space(), i);
    DiffPoly r = c.apply_d0(c.apply_d0(x));
    if (!r.is_zero()) rep.fail("d0^2(" + c.space()->name(i) + ") = " + r.str());
  }
  return rep;
}

/// The four formulas for {d_λ a}, {d_λ φ_a}, {d_λ φ^a}, {d_λ Φ_a} on basis elements.
inline CheckReport check_d_formulas(const BrstComplex& c) {
  CheckReport rep{"d formulas"};
  const auto& g = c.algebra();
  auto compare = [&](const std::string& what, const LambdaPoly& got, const LambdaPoly& want) {
    ++rep.checked;
    if (got != want) rep.fail(what + ": engine " + got.str() + " expected " + want.str());
  };
  const Vec& f = g.sl2().f;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    Vec va = g.basis(a);
    LambdaPoly want(c.space());
    for (auto al : c.S()) want.add(0, c.phid_sym(al) * c.u(g.bracket(g.basis(al), va)) * Scalar(c.s(al)));
    DiffPoly pa = c.phid(va) * (c.k() * Scalar(c.s(a)));
    want.add(0, pa.partial());
    want.add(1, pa);
    compare("{d λ " + g.name_of(a) + "}", c.bracket(c.d(), c.u(va)), want);
  }
  for (auto a : c.S()) {
    Vec va = g.basis(a);
    LambdaPoly want(c.space());
    DiffPoly w = c.u(c.pi_plus(va)) + DiffPoly(Scalar(g.form(va, f))) + c.Phi(va) * Scalar(c.s(a));
    for (auto al : c.S()) w += c.phid_sym(al) * c.phi(g.bracket(g.basis(al), c.pi_plus(va)));
    want.add(0, w);
    compare("{d λ phi_" + g.name_of(a) + "}", c.bracket(c.d(), c.phi(va)), want);
  }
  for (auto b : c.S()) {
    const Vec& ub = c.dual()[b];
    LambdaPoly want(c.space());
    for (auto al : c.S())
      want.add(0, c.phid_sym(al) * c.phid(g.bracket(g.basis(al), ub)) * Scalar(Rational(c.s(al), 2)));
    compare("{d λ phid_" + g.name_of(b) + "}", c.bracket(c.d(), c.phid(ub)), want);
  }
  for (auto a : c.S_half()) {
    Vec va = g.basis(a);
    LambdaPoly want(c.phid(g.bracket(va, f)));
    compare("{d λ Phi_" + g.name_of(a) + "}", c.bracket(c.d(), c.Phi(va)), want);
  }
  return rep;
}

/// d₍₀₎(J_a) = Σ s(u_α) φ^α K_{[u_α,a]} + Σ k s(u_α)(u_α|a) ∂φ^α.
inline CheckReport check_d0_J(const BrstComplex& c) {
  CheckReport rep{"d0 J"};
  const auto& g = c.algebra();
  for (std::size_t a = 0; a < g.dim(); ++a) {
    Vec va = g.basis(a);
    DiffPoly want(c.space());
    for (auto al : c.S()) {
      Vec ua = g.basis(al);
      want += c.phid_sym(al) * c.K(g.bracket(ua, va)) * Scalar(c.s(al));
      want += c.phid_sym(al, 1) * (c.k() * Scalar(c.s(al) * g.form(ua, va)));
    }
    ++rep.checked;
    DiffPoly got = c.apply_d0(c.J(va));
    if (got != want) rep.fail("d0(J_" + g.name_of(a) + "): engine " + got.str() + " expected " + want.str());
  }
  return rep;
}

/// The three-case table for {K_a λ K_b} over all basis pairs.
inline CheckReport check_K_brackets(const BrstComplex& c) {
  CheckReport rep{"K brackets"};
  const auto& g = c.algebra();
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      Vec va = g.basis(a), vb = g.basis(b);
      Vec ab = g.bracket(va, vb);
      LambdaPoly want(c.space());
      if (g.grade(a) <= 0 && g.grade(b) <= 0) {
        want.add(0, c.K(ab));
        want.add(1, DiffPoly(c.k() * Scalar(g.form(va, vb))));
      } else if (g.grade(a) == Rational(1, 2) && g.grade(b) == Rational(1, 2)) {
        want.add(0, -c.K(ab));
        ++rep.checked;
        if (want != LambdaPoly(DiffPoly(Scalar(g.form(ab, g.sl2().f)))))
          rep.fail("-K_[" + g.name_of(a) + "," + g.name_of(b) + "] is not the scalar ([a,b]|f)");
      }
      ++rep.checked;
      LambdaPoly got = c.bracket(c.K(va), c.K(vb));
      if (got != want)
        rep.fail("{K_" + g.name_of(a) + " λ K_" + g.name_of(b) + "}: engine " + got.str() + " expected " + want.str());
    }
  return rep;
}

/// {J_a λ J_b} = J_{[a,b]} + kλ(a|b) when a, b lie on the same side of the grading.
inline CheckReport check_J_closure(const BrstComplex& c) {
  CheckReport rep{"J closure"};
  const auto& g = c.algebra();
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      bool both_pos = g.grade(a) >= 0 && g.grade(b) >= 0;
      bool both_neg = g.grade(a) <= 0 && g.grade(b) <= 0;
      if (!both_pos && !both_neg) continue;
      Vec va = g.basis(a), vb = g.basis(b);
      LambdaPoly want(c.J(g.bracket(va, vb)));
      want.add(1, DiffPoly(c.k() * Scalar(g.form(va, vb))));
      ++rep.checked;
      LambdaPoly got = c.bracket(c.J(va), c.J(vb));
      if (got != want)
        rep.fail("{J_" + g.name_of(a) + " λ J_" + g.name_of(b) + "}: engine " + got.str() + " expected " + want.str());
    }
  return rep;
}

/// The displayed actions of L^g, L^ch, L^ne and the conformal weights from H = L₍₁₎.
inline CheckReport check_L_action(const BrstComplex& c) {
  CheckReport rep{"L action"};
  const auto& g = c.algebra();
  auto compare = [&](const std::string& what, const LambdaPoly& got, const LambdaPoly& want) {
    ++rep.checked;
    if (got != want) rep.fail(what + ": engine " + got.str() + " expected " + want.str());
  };
  auto weighted = [&](const DiffPoly& x, const Rational& w) {
    LambdaPoly r(x.partial());
    r.add(1, x * Scalar(w));
    return r;
  };
  for (std::size_t a = 0; a < g.dim(); ++a) {
    Vec va = g.basis(a);
    LambdaPoly want = weighted(c.u(va), 1 - g.grade(a));
    want.add(2, DiffPoly(-c.k() * Scalar(g.form(g.sl2().x, va))));
    compare("{L^g λ " + g.name_of(a) + "}", c.bracket(c.L_g(), c.u(va)), want);
  }
  for (auto a : c.S()) {
    Vec va = g.basis(a);
    compare("{L^ch λ phi_" + g.name_of(a) + "}", c.bracket(c.L_ch(), c.phi(va)), weighted(c.phi(va), 1 - g.grade(a)));
    DiffPoly pd = DiffPoly::symbol(c.space(), c.phid_index(a));
    compare("{L^ch λ phid_" + g.name_of(a) + "}", c.bracket(c.L_ch(), pd), weighted(pd, g.grade(a)));
  }
  for (auto a : c.S_half()) {
    Vec va = g.basis(a);
    compare("{L^ne λ Phi_" + g.name_of(a) + "}", c.bracket(c.L_ne(), c.Phi(va)), weighted(c.Phi(va), Rational(1, 2)));
  }
  auto w = c.weights();
  DiffPoly L = c.L();
  for (std::size_t i = 0; i < c.space()->size(); ++i) {
    DiffPoly x = DiffPoly::symbol(c.space(), i);
    LambdaPoly br = c.bracket(L, x);
    ++rep.checked;
    if (br.coeff(0) != x.partial() || br.coeff(1) != x * Scalar(w[i]))
      rep.fail("conformal weight of " + c.space()->name(i) + " from L(1): " + br.str());
  }
  return rep;
}

}  // namespace wsuper
