#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wsuper/diffpoly.hpp"
#include "wsuper/report.hpp"

namespace wsuper {

/// Σ c_n λ^n with DiffPoly coefficients.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(SpacePtr space) : space_(std::move(space)) {}
  LambdaPoly(const DiffPoly& c0) : space_(c0.space()) { add(0, c0); }

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }

  DiffPoly coeff(std::size_t n) const { return n < c_.size() ? c_[n] : DiffPoly(space_); }
  const std::vector<DiffPoly>& coeffs() const { return c_; }

  void add(std::size_t n, const DiffPoly& p) {
    if (p.is_zero()) return;
    if (!space_) space_ = p.space();
    if (c_.size() <= n) c_.resize(n + 1, DiffPoly(space_));
    c_[n] += p;
    trim();
  }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    for (std::size_t n = 0; n < o.c_.size(); ++n) add(n, o.c_[n]);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) {
    for (std::size_t n = 0; n < o.c_.size(); ++n) add(n, -o.c_[n]);
    return *this;
  }
  LambdaPoly operator-() const {
    LambdaPoly r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
  }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }

  friend LambdaPoly operator*(const Scalar& s, const LambdaPoly& a) { return a.map([&](const DiffPoly& p) { return p * s; }); }
  friend LambdaPoly operator*(const DiffPoly& left, const LambdaPoly& a) { return a.map([&](const DiffPoly& p) { return left * p; }); }
  friend LambdaPoly operator*(const LambdaPoly& a, const DiffPoly& right) { return a.map([&](const DiffPoly& p) { return p * right; }); }

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t n = 0; n < a.c_.size(); ++n)
      if (a.c_[n] != b.c_[n]) return false;
    return true;
  }
  friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

  template <class F>
  LambdaPoly map(F&& f) const {
    LambdaPoly r(space_);
    for (std::size_t n = 0; n < c_.size(); ++n) r.add(n, f(c_[n]));
    return r;
  }
  /// Coefficientwise map into another generator space.
  template <class F>
  LambdaPoly map_into(const SpacePtr& target, F&& f) const {
    LambdaPoly r(target);
    for (std::size_t n = 0; n < c_.size(); ++n) r.add(n, f(c_[n]));
    return r;
  }

  /// Multiplication by λ^m.
  LambdaPoly shift(std::size_t m) const {
    LambdaPoly r(space_);
    for (std::size_t n = 0; n < c_.size(); ++n) r.add(n + m, c_[n]);
    return r;
  }

  /// (λ+∂) applied once, ∂ acting on the coefficients.
  LambdaPoly lambda_plus_partial() const {
    LambdaPoly r = shift(1);
    for (std::size_t n = 0; n < c_.size(); ++n) r.add(n, c_[n].partial());
    return r;
  }

  /// Σ c_n μ^n ↦ Σ (−λ−∂)^n c_n, the substitution used by skewsymmetry.
  LambdaPoly flip() const {
    LambdaPoly r(space_);
    for (std::size_t n = 0; n < c_.size(); ++n) {
      if (c_[n].is_zero()) continue;
      LambdaPoly t(c_[n]);
      for (std::size_t i = 0; i < n; ++i) t = t.lambda_plus_partial();
      r += (n % 2 ? -t : t);
    }
    return r;
  }

  /// Value at λ = 0.
  DiffPoly at_zero() const { return coeff(0); }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t n = 0; n < c_.size(); ++n) {
      std::string lam = n == 0 ? "" : (n == 1 ? "λ" : "λ^" + std::to_string(n));
      for (const auto& [m, c] : c_[n].terms()) append_signed(out, term_str(c_[n].space().get(), c, lam, m));
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  SpacePtr space_;
  std::vector<DiffPoly> c_;
};

/// Two-variable polynomial Σ c_{ij} λ^i μ^j, used for the Jacobi identity.
using BiLambdaPoly = std::map<std::pair<std::size_t, std::size_t>, DiffPoly>;

inline void bi_add(BiLambdaPoly& acc, std::size_t i, std::size_t j, const DiffPoly& p) {
  if (p.is_zero()) return;
  auto [it, fresh] = acc.try_emplace({i, j}, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) acc.erase(it);
  }
}

/// λ-brackets of generators of W at derivative order zero.
class BaseBracket {
 public:
  explicit BaseBracket(SpacePtr space) : space_(std::move(space)), table_(space_->size() * space_->size()) {}

  const SpacePtr& space() const { return space_; }

  /// Stores {a_λ b}; with `mirror` also stores {b_λ a} = −(−1)^{p(a)p(b)}{a_{−λ−∂} b}.
  void set(std::size_t a, std::size_t b, const LambdaPoly& v, bool mirror = true) {
    table_[a * space_->size() + b] = v;
    if (mirror && a != b) {
      LambdaPoly f = v.flip();
      table_[b * space_->size() + a] = (space_->parity(a) & space_->parity(b)) ? f : -f;
    }
  }
  void set(const std::string& a, const std::string& b, const LambdaPoly& v, bool mirror = true) {
    set(space_->index(a), space_->index(b), v, mirror);
  }

  const LambdaPoly& get(std::size_t a, std::size_t b) const { return table_[a * space_->size() + b]; }

 private:
  SpacePtr space_;
  std::vector<LambdaPoly> table_;
};

/// Extends a base bracket to S(C[∂]⊗W) by sesquilinearity, left Leibniz, and skewsymmetry.
class LambdaEngine {
 public:
  explicit LambdaEngine(BaseBracket base) : base_(std::move(base)) {}

  const BaseBracket& base() const { return base_; }
  const SpacePtr& space() const { return base_.space(); }

  LambdaPoly bracket(const DiffPoly& A, const DiffPoly& B) const {
    check_space(A);
    check_space(B);
    LambdaPoly out(space());
    for (const auto& [ma, ca] : A.terms()) {
      if (ma.empty()) continue;
      for (const auto& [mb, cb] : B.terms()) {
        if (mb.empty()) continue;
        out += (ca * cb) * monomials(ma, mb);
      }
    }
    return out;
  }

  /// {∂^m a_λ ∂^n b} = (−λ)^m (λ+∂)^n {a_λ b}.
  LambdaPoly symbols(Sym a, Sym b) const {
    std::uint64_t key = (std::uint64_t(a) << 32) | b;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    LambdaPoly v = base_.get(sym_gen(a), sym_gen(b));
    for (unsigned i = 0; i < sym_order(b); ++i) v = v.lambda_plus_partial();
    unsigned m = sym_order(a);
    v = v.shift(m);
    if (m % 2) v = -v;
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, v);
    return v;
  }

  LambdaPoly monomials(const Monomial& A, const Monomial& B) const {
    if (A.empty() || B.empty()) return LambdaPoly(space());
    int pA = monomial_parity(A);
    auto single = [&](Sym b) -> LambdaPoly {
      if (A.size() == 1) return symbols(A[0], b);
      LambdaPoly f = leibniz(b, A).flip();
      return (pA & sym_parity(b)) ? f : -f;
    };
    LambdaPoly out(space());
    int prefix_parity = 0;
    for (std::size_t i = 0; i < B.size(); ++i) {
      LambdaPoly v = single(B[i]);
      if (!v.is_zero()) {
        Monomial pre(B.begin(), B.begin() + i), post(B.begin() + i + 1, B.end());
        DiffPoly left = DiffPoly::term(space(), Scalar(1), pre);
        DiffPoly right = DiffPoly::term(space(), Scalar(1), post);
        LambdaPoly t = left * v * right;
        out += (pA & prefix_parity) ? -t : t;
      }
      prefix_parity ^= sym_parity(B[i]);
    }
    return out;
  }

 private:
  /// {a_λ B} for a single symbol a by left Leibniz.
  LambdaPoly leibniz(Sym a, const Monomial& B) const {
    LambdaPoly out(space());
    int pa = sym_parity(a), prefix_parity = 0;
    for (std::size_t i = 0; i < B.size(); ++i) {
      LambdaPoly v = symbols(a, B[i]);
      if (!v.is_zero()) {
        Monomial pre(B.begin(), B.begin() + i), post(B.begin() + i + 1, B.end());
        LambdaPoly t = DiffPoly::term(space(), Scalar(1), pre) * v * DiffPoly::term(space(), Scalar(1), post);
        out += (pa & prefix_parity) ? -t : t;
      }
      prefix_parity ^= sym_parity(B[i]);
    }
    return out;
  }

  void check_space(const DiffPoly& p) const {
    if (p.space() && p.space() != space())
      throw MixedSpaces("element of '" + p.space()->label() + "' bracketed in '" + space()->label() + "'");
  }

  BaseBracket base_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, LambdaPoly> cache_;
};

inline LambdaPoly lambda_bracket(const LambdaEngine& eng, const DiffPoly& A, const DiffPoly& B) {
  return eng.bracket(A, B);
}

/// {A_λ B} + (−1)^{p(A)p(B)} {B_{−λ−∂} A}.
inline LambdaPoly skew_residual(const LambdaEngine& eng, const DiffPoly& A, const DiffPoly& B) {
  LambdaPoly f = eng.bracket(B, A).flip();
  return eng.bracket(A, B) + ((A.parity() & B.parity()) ? -f : f);
}

/// {A_λ{B_μ C}} − (−1)^{p(A)p(B)}{B_μ{A_λ C}} − {{A_λ B}_{λ+μ} C} as an exact polynomial in λ, μ.
inline BiLambdaPoly jacobi_residual(const LambdaEngine& eng, const DiffPoly& A, const DiffPoly& B, const DiffPoly& C) {
  BiLambdaPoly acc;
  int sign = (A.parity() & B.parity()) ? -1 : 1;
  LambdaPoly bc = eng.bracket(B, C);
  for (std::size_t j = 0; j < bc.size(); ++j) {
    LambdaPoly t = eng.bracket(A, bc.coeff(j));
    for (std::size_t i = 0; i < t.size(); ++i) bi_add(acc, i, j, t.coeff(i));
  }
  LambdaPoly ac = eng.bracket(A, C);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    LambdaPoly t = eng.bracket(B, ac.coeff(i));
    for (std::size_t j = 0; j < t.size(); ++j) bi_add(acc, i, j, sign > 0 ? -t.coeff(j) : t.coeff(j));
  }
  LambdaPoly ab = eng.bracket(A, B);
  for (std::size_t i = 0; i < ab.size(); ++i) {
    LambdaPoly t = eng.bracket(ab.coeff(i), C);
    for (std::size_t n = 0; n < t.size(); ++n) {
      // (λ+μ)^n λ^i expanded binomially.
      Rational binom = 1;
      for (std::size_t r = 0; r <= n; ++r) {
        bi_add(acc, i + r, n - r, -(t.coeff(n) * Scalar(binom)));
        binom = binom * Rational(long(n - r)) / Rational(long(r + 1));
      }
    }
  }
  return acc;
}

inline CheckReport check_skewsymmetry(const LambdaEngine& eng, const std::vector<std::pair<DiffPoly, DiffPoly>>& samples) {
  CheckReport rep{"skewsymmetry"};
  for (const auto& [a, b] : samples) {
    ++rep.checked;
    LambdaPoly r = skew_residual(eng, a, b);
    if (!r.is_zero()) rep.fail("{" + a.str() + " λ " + b.str() + "} residual " + r.str());
  }
  return rep;
}

struct Triple {
  DiffPoly a, b, c;
};

inline CheckReport check_jacobi(const LambdaEngine& eng, const std::vector<Triple>& samples) {
  CheckReport rep{"jacobi"};
  for (const auto& t : samples) {
    ++rep.checked;
    BiLambdaPoly r = jacobi_residual(eng, t.a, t.b, t.c);
    if (!r.empty())
      rep.fail("(" + t.a.str() + ", " + t.b.str() + ", " + t.c.str() + ") residual at λ^" +
               std::to_string(r.begin()->first.first) + "μ^" + std::to_string(r.begin()->first.second) + ": " +
               r.begin()->second.str());
  }
  return rep;
}

/// Weights per generator; ∂ adds one. Returns nullopt for inhomogeneous input (zero has no weight).
inline std::optional<Rational> conformal_weight(const std::vector<Rational>& weights, const DiffPoly& A) {
  std::optional<Rational> w;
  for (const auto& [m, c] : A.terms()) {
    Rational s = 0;
    for (Sym x : m) s += weights.at(sym_gen(x)) + Rational(long(sym_order(x)));
    if (w && *w != s) return std::nullopt;
    w = s;
  }
  return w;
}

}  // namespace wsuper
