#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wsuper/superalgebra.hpp"

namespace wsuper {

namespace detail {

struct SuperMatrix {
  std::size_t n;
  std::vector<int> index_parity;
  Mat m;
};

inline Mat matmul(const Mat& a, const Mat& b) { return linalg::mul(a, b); }

inline int matrix_parity(const std::vector<int>& ip, const Mat& m) {
  int p = -1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[i][j] == 0) continue;
      int q = ip[i] ^ ip[j];
      if (p >= 0 && p != q) throw Error("inhomogeneous supermatrix");
      p = q;
    }
  return p < 0 ? 0 : p;
}

inline Rational supertrace(const std::vector<int>& ip, const Mat& m) {
  Rational r = 0;
  for (std::size_t i = 0; i < m.size(); ++i) r += ip[i] ? -m[i][i] : m[i][i];
  return r;
}

/// Algebra spanned by homogeneous supermatrices; form = c·str(AB) with c fixed by (e|f) = 1.
inline LieSuperalgebra from_matrices(const std::string& name, const std::vector<std::string>& names,
                                     const std::vector<int>& ip, const std::vector<Mat>& mats, const Vec& e,
                                     const Vec& x, const Vec& f) {
  std::size_t n = mats.size(), N = ip.size();
  std::vector<int> par(n);
  for (std::size_t i = 0; i < n; ++i) par[i] = matrix_parity(ip, mats[i]);
  Mat flat = linalg::zeros(N * N, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) flat[i * N + j][c] = mats[c][i][j];
  auto coords = [&](const Mat& m) {
    Vec b(N * N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) b[i * N + j] = m[i][j];
    auto s = linalg::solve(flat, b);
    if (!s) throw Error(name + ": matrices do not close under the supercommutator");
    return *s;
  };
  std::vector<std::vector<Vec>> st(n, std::vector<Vec>(n));
  Mat raw = linalg::zeros(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Mat ab = matmul(mats[a], mats[b]), ba = matmul(mats[b], mats[a]);
      int s = (par[a] & par[b]) ? -1 : 1;
      Mat c = ab;
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) c[i][j] -= s * ba[i][j];
      st[a][b] = coords(c);
      raw[a][b] = supertrace(ip, ab);
    }
  Rational ef = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) ef += e[a] * raw[a][b] * f[b];
  if (ef == 0) throw DegenerateForm(name + ": supertrace form vanishes on (e, f)");
  for (auto& row : raw)
    for (auto& v : row) v /= ef;
  return LieSuperalgebra(name, names, par, std::move(st), std::move(raw), Sl2Triple{e, x, f});
}

inline Mat unit(std::size_t N, std::size_t i, std::size_t j, const Rational& c = 1) {
  Mat m = linalg::zeros(N, N);
  m[i][j] = c;
  return m;
}
inline Mat plus(Mat a, const Mat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += b[i][j];
  return a;
}

inline Vec coords(std::size_t n, std::initializer_list<std::pair<std::size_t, Rational>> terms) {
  Vec v(n, Rational(0));
  for (const auto& [i, c] : terms) v[i] += c;
  return v;
}

}  // namespace detail

inline LieSuperalgebra builtin_sl2() {
  using namespace detail;
  std::vector<int> ip{0, 0};
  Mat e = unit(2, 0, 1), h = plus(unit(2, 0, 0), unit(2, 1, 1, -1)), f = unit(2, 1, 0);
  return from_matrices("sl(2)", {"e", "h", "f"}, ip, {e, h, f}, coords(3, {{0, 1}}), coords(3, {{1, Rational(1, 2)}}),
                       coords(3, {{2, 1}}));
}

inline LieSuperalgebra builtin_spo21() {
  using namespace detail;
  std::vector<int> ip{0, 0, 1};
  Mat h = plus(unit(3, 0, 0), unit(3, 1, 1, -1));
  Mat e_ev = unit(3, 0, 1), f_ev = unit(3, 1, 0);
  Mat e_od = plus(unit(3, 0, 2), unit(3, 2, 1));
  Mat f_od = plus(unit(3, 1, 2), unit(3, 2, 0, -1));
  return from_matrices("spo(2|1)", {"e_ev", "h", "f_ev", "e_od", "f_od"}, ip, {e_ev, h, f_ev, e_od, f_od},
                       coords(5, {{0, 1}}), coords(5, {{1, Rational(1, 2)}}), coords(5, {{2, 1}}));
}

/// spo(2|3) ⊂ gl(2|3); even indices 1,2 are 0,1 and odd indices 1̄,2̄,3̄ are 2,3,4.
inline LieSuperalgebra builtin_spo23() {
  using namespace detail;
  std::vector<int> ip{0, 0, 1, 1, 1};
  const std::size_t o1 = 2, o2 = 3, o3 = 4;
  auto u = [](std::size_t i, std::size_t j, const Rational& c = 1) { return unit(5, i, j, c); };
  Mat H1 = plus(u(0, 0), u(1, 1, -1));
  Mat H2 = plus(u(o1, o1), u(o2, o2, -1));
  Mat E11 = plus(u(o1, 0), u(1, o2, -1));
  Mat E12 = plus(u(o3, 1), u(0, o3));
  Mat E21 = u(0, 1);
  Mat E22 = plus(u(o1, o3), u(o3, o2, -1));
  Mat E3 = plus(u(o1, 1), u(0, o2));
  Mat F11 = plus(u(0, o1), u(o2, 1));
  Mat F12 = plus(u(o3, 0), u(1, o3, -1));
  Mat F21 = u(1, 0);
  Mat F22 = plus(u(o2, o3), u(o3, o1, -1));
  Mat F3 = plus(u(o2, 0), u(1, o1, -1));
  std::vector<std::string> names{"H1", "H2", "E11", "E12", "E21", "E22", "E3", "F11", "F12", "F21", "F22", "F3"};
  // e = E21 + E22, h = H1 + 2 H2, f = F21 - 2 F22
  return from_matrices("spo(2|3)", names, ip, {H1, H2, E11, E12, E21, E22, E3, F11, F12, F21, F22, F3},
                       coords(12, {{4, 1}, {5, 1}}), coords(12, {{0, Rational(1, 2)}, {1, 1}}),
                       coords(12, {{9, 1}, {10, -2}}));
}

inline std::vector<std::string> builtin_names() { return {"sl(2)", "spo(2|1)", "spo(2|3)"}; }

inline AlgebraPtr builtin(const std::string& name) {
  if (name == "sl(2)") return std::make_shared<const LieSuperalgebra>(builtin_sl2());
  if (name == "spo(2|1)") return std::make_shared<const LieSuperalgebra>(builtin_spo21());
  if (name == "spo(2|3)") return std::make_shared<const LieSuperalgebra>(builtin_spo23());
  throw UnknownBuiltin("unknown builtin algebra '" + name + "'");
}

/// Generator names used in the worked examples, keyed by the default label of the engine.
inline std::map<std::string, std::string> example_labels(const std::string& name) {
  if (name == "spo(2|1)") return {{"phi_f_od", "phi_od"}, {"phi_f_ev", "phi_ev"}};
  if (name == "spo(2|3)") return {{"phi_v0", "phi_1"}, {"phi_F21", "phi_21"}, {"phi_F22", "phi_22"}, {"phi_F3", "phi_3"}};
  return {};
}

struct PrintedGenerator {
  std::string label, leading, element;
};

/// Closed-form W(g,f,1) generators of the worked examples, in the text grammar over the algebra's basis names.
inline std::vector<PrintedGenerator> printed_generators(const std::string& name) {
  if (name == "spo(2|1)")
    return {{"phi_od", "f_od", "f_od - 1/2·e_od·h - ∂(e_od)"},
            {"phi_ev", "f_ev", "f_ev + 1/2·f_od·e_od - 1/4·h^2 + 1/4·e_od·∂(e_od) - 1/2·∂(h)"}};
  if (name == "spo(2|3)")
    return {{"phi_1", "F11 - 1/2·F12",
             "F11 - 1/2·F12 + 3/4·H1·E12 + 3/4·H2·E12 + 3/8·H2·E11 + 1/2·∂(E11) + 1/2·∂(E12)"},
            {"phi_21", "F21",
             "F21 - 3/4·F12·E11 - 9/8·H1·E11·E12 + 3/4·H1^2 - 3/8·E12·∂(E11) + 3/8·E11·∂(E12) - 3/16·E11·∂(E11) - "
             "1/2·∂(H1)"},
            {"phi_22", "F22",
             "F22 + 3/4·F11·E11 - 3/4·F12·E12 - 3/8·F12·E11 - 9/16·H1·E11·E12 + 3/8·H2^2 - 3/8·E12·∂(E11) - "
             "3/16·E11·∂(E11) + 1/2·∂(H2)"},
            {"phi_3", "F3",
             "F3 - 3/2·F21·E12 + 3/4·F22·E11 - 3/4·F21·E11 + 9/8·F12·E11·E12 - 9/16·H1^2·E11 + 3/4·H2·F12 - "
             "3/2·H1·F11 + 9/8·F11·E11·E12 - 9/8·H1^2·E12 - 9/8·H1·H2·E12 - 3/8·H2·∂(E11) - 3/4·H1·∂(E12) + "
             "9/16·E11·E12·∂(E12) + 3/8·∂(H1)·E11 + 1/2·∂(F12) - 1/4·∂^2(E11)"}};
  return {};
}

}  // namespace wsuper
