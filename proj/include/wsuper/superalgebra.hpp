#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wsuper/diffpoly.hpp"
#include "wsuper/errors.hpp"
#include "wsuper/linalg.hpp"

namespace wsuper {

using linalg::Mat;
using linalg::Vec;

struct Sl2Triple {
  Vec e, x, f;
};

/// Finite-dimensional Lie superalgebra given by structure constants in a fixed homogeneous basis.
class LieSuperalgebra {
 public:
  /// structure[i][j] is [u_i, u_j] in basis coordinates. Validates every axiom; throws on failure.
  LieSuperalgebra(std::string name, std::vector<std::string> names, std::vector<int> parities,
                  std::vector<std::vector<Vec>> structure, Mat form, Sl2Triple sl2)
      : name_(std::move(name)),
        names_(std::move(names)),
        parities_(std::move(parities)),
        structure_(std::move(structure)),
        form_(std::move(form)),
        sl2_(std::move(sl2)) {
    std::size_t n = names_.size();
    if (parities_.size() != n || structure_.size() != n || form_.size() != n)
      throw ParseError("inconsistent algebra dimensions");
    space_ = make_space(name_, names_, parities_);
    validate();
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name_of(std::size_t i) const { return names_.at(i); }
  int parity(std::size_t i) const { return parities_.at(i); }
  const SpacePtr& space() const { return space_; }
  const Mat& form_matrix() const { return form_; }
  const Sl2Triple& sl2() const { return sl2_; }
  const Vec& structure(std::size_t i, std::size_t j) const { return structure_[i][j]; }

  std::size_t index(const std::string& n) const { return space_->index(n); }

  Vec basis(std::size_t i) const {
    Vec v(dim(), Rational(0));
    v.at(i) = 1;
    return v;
  }
  Vec vec(const std::string& n) const { return basis(index(n)); }
  Vec zero() const { return Vec(dim(), Rational(0)); }

  Vec bracket(const Vec& a, const Vec& b) const {
    Vec r = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j] == 0) continue;
        Rational c = a[i] * b[j];
        const Vec& s = structure_[i][j];
        for (std::size_t l = 0; l < dim(); ++l)
          if (s[l] != 0) r[l] += c * s[l];
      }
    }
    return r;
  }

  Rational form(const Vec& a, const Vec& b) const {
    Rational r = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (b[j] != 0) r += a[i] * form_[i][j] * b[j];
    }
    return r;
  }

  Rational grade(std::size_t i) const { return grading_.at(i); }
  const std::vector<Rational>& grading() const { return grading_; }

  /// ad x weight of a nonzero homogeneous vector.
  Rational grade_of(const Vec& v) const {
    std::optional<Rational> j;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (v[i] == 0) continue;
      if (j && *j != grading_[i]) throw GradingError("vector is not ad x homogeneous: " + str(v));
      j = grading_[i];
    }
    if (!j) throw GradingError("zero vector has no weight");
    return *j;
  }

  std::vector<std::size_t> grading_component(const Rational& j) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (grading_[i] == j) out.push_back(i);
    return out;
  }

  /// Parity of a homogeneous vector (zero counts as even).
  int parity_of(const Vec& v) const {
    int p = -1;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (v[i] == 0) continue;
      if (p >= 0 && p != parities_[i]) throw ParityMismatch("vector of mixed parity: " + str(v));
      p = parities_[i];
    }
    return p < 0 ? 0 : p;
  }

  /// Degree-one element of S(C[∂]⊗g).
  DiffPoly poly(const Vec& v, unsigned order = 0) const {
    DiffPoly r(space_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (v[i] != 0) r += DiffPoly::symbol(space_, i, order) * Scalar(v[i]);
    return r;
  }
  DiffPoly poly(const std::string& n, unsigned order = 0) const { return DiffPoly::symbol(space_, n, order); }

  std::string str(const Vec& v) const {
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (v[i] == 0) continue;
      Monomial m{make_sym(i, 0, parities_[i])};
      append_signed(out, term_str(space_.get(), Scalar(v[i]), "", m));
    }
    return out.empty() ? "0" : out;
  }

 private:
  void validate() {
    std::size_t n = dim();
    auto sgn = [&](std::size_t a, std::size_t b) { return (parities_[a] & parities_[b]) ? -1 : 1; };
    auto nm = [&](std::size_t a) { return names_[a]; };
    for (std::size_t a = 0; a < n; ++a) {
      if (structure_[a].size() != n) throw ParseError("structure table row has wrong length");
      for (std::size_t b = 0; b < n; ++b) {
        if (structure_[a][b].size() != n) throw ParseError("structure vector has wrong length");
        for (std::size_t c = 0; c < n; ++c) {
          if (structure_[a][b][c] != 0 && parities_[c] != (parities_[a] ^ parities_[b]))
            throw AxiomViolation("parity: [" + nm(a) + "," + nm(b) + "] has a component of the wrong parity");
          if (structure_[a][b][c] != -sgn(a, b) * structure_[b][a][c])
            throw AxiomViolation("skewsymmetry: (" + nm(a) + "," + nm(b) + ")");
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          Vec lhs = bracket(basis(a), structure_[b][c]);
          Vec r1 = bracket(structure_[a][b], basis(c));
          Vec r2 = bracket(basis(b), structure_[a][c]);
          for (std::size_t l = 0; l < n; ++l)
            if (lhs[l] != r1[l] + sgn(a, b) * r2[l])
              throw AxiomViolation("jacobi: (" + nm(a) + "," + nm(b) + "," + nm(c) + ")");
        }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (form_[a].size() != n) throw ParseError("form row has wrong length");
        if (form_[a][b] != 0 && parities_[a] != parities_[b])
          throw AxiomViolation("form parity: (" + nm(a) + "|" + nm(b) + ") pairs different parities");
        if (form_[a][b] != sgn(a, b) * form_[b][a])
          throw AxiomViolation("form supersymmetry: (" + nm(a) + "|" + nm(b) + ")");
        for (std::size_t c = 0; c < n; ++c)
          if (form(structure_[a][b], basis(c)) != form(basis(a), structure_[b][c]))
            throw AxiomViolation("form invariance: (" + nm(a) + "," + nm(b) + "," + nm(c) + ")");
      }
    const auto& [e, x, f] = sl2_;
    if (e.size() != n || x.size() != n || f.size() != n) throw ParseError("sl2 vectors have wrong length");
    if (parity_of(e) || parity_of(x) || parity_of(f)) throw AxiomViolation("sl2: triple must be even");
    auto scaled = [](Vec v, const Rational& c) {
      for (auto& t : v) t *= c;
      return v;
    };
    if (bracket(scaled(x, 2), e) != scaled(e, 2)) throw AxiomViolation("sl2: [2x,e] != 2e");
    if (bracket(scaled(x, 2), f) != scaled(f, -2)) throw AxiomViolation("sl2: [2x,f] != -2f");
    if (bracket(e, f) != scaled(x, 2)) throw AxiomViolation("sl2: [e,f] != 2x");
    if (form(e, f) != 1) throw AxiomViolation("sl2: (e|f) != 1");
    if (2 * form(x, x) != 1) throw AxiomViolation("sl2: 2(x|x) != 1");
    grading_.assign(n, Rational(0));
    for (std::size_t a = 0; a < n; ++a) {
      Vec v = bracket(x, basis(a));
      for (std::size_t l = 0; l < n; ++l)
        if (l != a && v[l] != 0) throw GradingError("ad x is not diagonal on " + nm(a));
      Rational j = v[a];
      if (!is_integer(2 * j)) throw GradingError("ad x eigenvalue of " + nm(a) + " is not a half-integer");
      grading_[a] = j;
    }
    form_inverse_check();
  }

  void form_inverse_check() const {
    if (linalg::rank(form_) != dim()) throw DegenerateForm("invariant form is degenerate");
  }

  std::string name_;
  std::vector<std::string> names_;
  std::vector<int> parities_;
  std::vector<std::vector<Vec>> structure_;
  Mat form_;
  Sl2Triple sl2_;
  SpacePtr space_;
  std::vector<Rational> grading_;
};

using AlgebraPtr = std::shared_ptr<const LieSuperalgebra>;

inline Vec scale(Vec v, const Rational& c) {
  for (auto& t : v) t *= c;
  return v;
}
inline Vec add(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Vec sub(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline bool is_zero(const Vec& v) {
  for (const auto& t : v)
    if (t != 0) return false;
  return true;
}

/// u^β with (u_α|u^β) = δ_{αβ}; row β holds the coordinates of u^β.
inline Mat dual_bases(const LieSuperalgebra& g) {
  Mat dual = linalg::inverse(linalg::transpose(g.form_matrix()));
  for (std::size_t b = 0; b < g.dim(); ++b)
    for (std::size_t i = 0; i < g.dim(); ++i)
      if (dual[b][i] != 0 && g.grade(i) != -g.grade(b))
        throw GradingError("dual basis is not compatible with the grading");
  return dual;
}

/// Basis of g^f = ker ad f.
inline std::vector<Vec> centralizer(const LieSuperalgebra& g, const Vec& f) {
  std::size_t n = g.dim();
  Mat m = linalg::zeros(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec c = g.bracket(f, g.basis(j));
    for (std::size_t i = 0; i < n; ++i) m[i][j] = c[i];
  }
  auto basis = linalg::nullspace(m, n);
  for (auto& v : basis) {
    std::size_t i = 0;
    while (v[i] == 0) ++i;
    v = scale(v, 1 / v[i]);
  }
  return basis;
}
inline std::vector<Vec> centralizer(const LieSuperalgebra& g) { return centralizer(g, g.sl2().f); }

/// Component v_f of v = v_f + [e, w] with v_f ∈ g^f.
inline Vec centralizer_component(const LieSuperalgebra& g, const Vec& v) {
  auto gf = centralizer(g);
  std::size_t n = g.dim(), m = gf.size();
  Mat a = linalg::zeros(n, m + n);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t i = 0; i < n; ++i) a[i][c] = gf[c][i];
  for (std::size_t c = 0; c < n; ++c) {
    Vec b = g.bracket(g.sl2().e, g.basis(c));
    for (std::size_t i = 0; i < n; ++i) a[i][m + c] = b[i];
  }
  auto sol = linalg::solve(a, v);
  if (!sol) throw Error("g is not g^f + [e,g]; sl2 data inconsistent");
  Vec r = g.zero();
  for (std::size_t c = 0; c < m; ++c) r = add(r, scale(gf[c], (*sol)[c]));
  return r;
}

/// The projection ♯ onto g_f(0).
inline Vec projection_sharp(const LieSuperalgebra& g, const Vec& v) {
  Vec r = centralizer_component(g, v);
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g.grade(i) != 0) r[i] = 0;
  return r;
}

/// Weight-j part of a vector.
inline Vec graded_part(const LieSuperalgebra& g, const Vec& v, const Rational& j) {
  Vec r = g.zero();
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g.grade(i) == j) r[i] = v[i];
  return r;
}

inline bool is_minimal(const LieSuperalgebra& g) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g.grade(i) > 1 || g.grade(i) < -1) return false;
  return g.grading_component(1).size() == 1 && g.grading_component(-1).size() == 1;
}

/// Basis z_α of g(1/2) and z*_α with [z_α, z*_β] = −δ_{αβ} e.
struct MinimalData {
  std::vector<std::size_t> z;
  std::vector<Vec> z_star;
};

inline MinimalData minimal_data(const LieSuperalgebra& g) {
  if (!is_minimal(g)) throw NotMinimal(g.name() + ": f is not minimal");
  MinimalData md;
  md.z = g.grading_component(Rational(1, 2));
  std::size_t r = md.z.size();
  const Vec& e = g.sl2().e;
  std::size_t ei = 0;
  while (e[ei] == 0) ++ei;
  Mat m = linalg::zeros(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t c = 0; c < r; ++c) {
      Vec b = g.bracket(g.basis(md.z[a]), g.basis(md.z[c]));
      Rational coef = b[ei] / e[ei];
      if (b != scale(e, coef)) throw NotMinimal("[g(1/2), g(1/2)] is not inside C e");
      m[a][c] = coef;
    }
  Mat cinv = linalg::inverse(linalg::transpose(m));
  for (std::size_t b = 0; b < r; ++b) {
    Vec zs = g.zero();
    for (std::size_t c = 0; c < r; ++c) zs = add(zs, scale(g.basis(md.z[c]), -cinv[b][c]));
    md.z_star.push_back(zs);
  }
  return md;
}

}  // namespace wsuper
