#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wsuper/errors.hpp"
#include "wsuper/rational.hpp"

namespace wsuper::linalg {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

inline Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, Vec(cols, Rational(0))); }

inline Mat identity(std::size_t n) {
  Mat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  Mat r = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline Mat transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat r = zeros(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c)
        if (m[row][c] != 0) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

inline std::size_t rank(Mat m) {
  if (m.empty()) return 0;
  return rref(m, m[0].size()).size();
}

/// Basis of {x : m x = 0}; one vector per free column, free variable set to 1.
inline std::vector<Vec> nullspace(Mat m, std::size_t ncols) {
  auto piv = rref(m, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vec> out;
  for (std::size_t fcol = 0; fcol < ncols; ++fcol) {
    if (is_piv[fcol]) continue;
    Vec v(ncols, Rational(0));
    v[fcol] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][fcol];
    out.push_back(std::move(v));
  }
  return out;
}

/// Particular solution of a x = b with free variables set to zero.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  std::size_t ncols = a.empty() ? 0 : a[0].size();
  Mat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = rref(aug, ncols + 1);
  if (!piv.empty() && piv.back() == ncols) return std::nullopt;
  Vec x(ncols, Rational(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][ncols];
  return x;
}

inline Mat inverse(const Mat& a) {
  std::size_t n = a.size();
  Mat aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug, n);
  if (piv.size() != n) throw DegenerateForm("matrix is singular");
  Mat r = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
  return r;
}

}  // namespace wsuper::linalg
