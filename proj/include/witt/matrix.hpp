#ifndef WITT_MATRIX_HPP
#define WITT_MATRIX_HPP

#include <optional>
#include <vector>

#include "witt/number_field.hpp"

namespace witt {

/// Minimal dense matrix.  Field algorithms (rank/inverse/solve) expect T to
/// be a field type (Scalar or Rational); HNF helpers below work on Int.
template <typename T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<T>> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T{})
      : rows(r), cols(c), a(r, std::vector<T>(c, fill)) {}

  std::vector<T>& operator[](std::size_t i) { return a[i]; }
  const std::vector<T>& operator[](std::size_t i) const { return a[i]; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  static Matrix identity(std::size_t n, const T& one) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = one;
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw error("matrix shape mismatch");
    Matrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k)
        for (std::size_t j = 0; j < y.cols; ++j) r[i][j] = r[i][j] + x[i][k] * y[k][j];
    return r;
  }
};

/// Rank over the coefficient field (destroys nothing; works on a copy).
template <typename T>
std::size_t field_rank(Matrix<T> m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m[piv][col] == T{}) ++piv;
    if (piv == m.rows) continue;
    std::swap(m.a[piv], m.a[rank]);
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      if (m[i][col] == T{}) continue;
      T f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j < m.cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Inverse of a square matrix over a field; nullopt when singular.
template <typename T>
std::optional<Matrix<T>> field_inverse(Matrix<T> m, const T& one) {
  if (m.rows != m.cols) throw error("inverse of non-square matrix");
  std::size_t n = m.rows;
  Matrix<T> inv = Matrix<T>::identity(n, one);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == T{}) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m.a[piv], m.a[col]);
    std::swap(inv.a[piv], inv.a[col]);
    T d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = m[col][j] / d;
      inv[col][j] = inv[col][j] / d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == T{}) continue;
      T f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = m[i][j] - f * m[col][j];
        inv[i][j] = inv[i][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Solves x * m = rhs for a row vector x (i.e. m^T y = rhs^T); nullopt when
/// inconsistent.  m may be rectangular; returns one solution.
template <typename T>
std::optional<std::vector<T>> solve_row_system(const Matrix<T>& m, const std::vector<T>& rhs) {
  // Augmented elimination on m^T | rhs^T.
  std::size_t n = m.rows, k = m.cols;
  if (rhs.size() != k) throw error("rhs length mismatch");
  Matrix<T> aug(k, n + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[j][i];
    aug[i][n] = rhs[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < k; ++col) {
    std::size_t piv = r;
    while (piv < k && aug[piv][col] == T{}) ++piv;
    if (piv == k) continue;
    std::swap(aug.a[piv], aug.a[r]);
    T d = aug[r][col];
    for (std::size_t j = col; j <= n; ++j) aug[r][j] = aug[r][j] / d;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == r || aug[i][col] == T{}) continue;
      T f = aug[i][col];
      for (std::size_t j = col; j <= n; ++j) aug[i][j] = aug[i][j] - f * aug[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < k; ++i)
    if (!(aug[i][n] == T{})) return std::nullopt;
  std::vector<T> x(n, T{});
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = aug[i][n];
  return x;
}

/// Row-style Hermite normal form of the row lattice of m: returns the unique
/// basis with positive pivots stepping right and entries above each pivot
/// reduced into [0, pivot).  Zero rows are dropped.
Matrix<Int> hnf_rows(Matrix<Int> m);

/// Expresses v as an integer combination of HNF basis rows; nullopt when v
/// is outside the lattice.
std::optional<std::vector<Int>> hnf_coordinates(const Matrix<Int>& hnf, const std::vector<Int>& v);

}  // namespace witt

#endif
