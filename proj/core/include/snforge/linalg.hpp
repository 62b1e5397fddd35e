#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "snforge/error.hpp"

namespace snforge {

/// Dense row-major matrix over any exact field-like type T. T needs the
/// arithmetic operators plus free functions is_zero(T), one_like(T) and
/// zero_like(T).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(zero);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, data_.empty() ? T{} : zero_like(data_[0]));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw DomainError("matrix-vector size mismatch");
    std::vector<T> out(rows_, zero_like(v.at(0)));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product size mismatch");
    Matrix c(a.rows_, b.cols_, zero_like(a.data_.at(0)));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
struct Rref {
  Matrix<T> reduced;
  /// pivots[r] is the pivot column of row r.
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Columns are eliminated in column_order (all
/// columns, ascending, when empty); changing the order changes the pivoting
/// but not the row space.
template <class T>
Rref<T> rref(Matrix<T> m, const std::vector<std::size_t>& column_order = {}) {
  std::vector<std::size_t> order = column_order;
  if (order.empty()) {
    order.resize(m.cols());
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col : order) {
    if (row == m.rows()) break;
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const T inv = one_like(m(row, col)) / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const T factor = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

/// Basis of the right null space {v : m v = 0}, one vector per free column,
/// with that free coordinate equal to one.
template <class T>
std::vector<std::vector<T>> kernel(const Matrix<T>& m, const T& zero) {
  const Rref<T> r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(m.cols(), zero);
    v[f] = one_like(zero);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m X = rhs for a matrix of right-hand sides. nullopt when some
/// column is inconsistent. Free variables are set to zero.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& m, const Matrix<T>& rhs, const T& zero,
                               const std::vector<std::size_t>& column_order = {}) {
  if (rhs.rows() != m.rows()) throw DomainError("solve: right-hand side has wrong height");
  Matrix<T> aug(m.rows(), m.cols() + rhs.cols(), zero);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) aug(i, m.cols() + j) = rhs(i, j);
  }
  std::vector<std::size_t> order = column_order;
  if (order.empty()) {
    order.resize(m.cols());
    std::iota(order.begin(), order.end(), 0);
  }
  const Rref<T> r = rref(std::move(aug), order);
  const std::size_t rk = r.pivots.size();
  for (std::size_t i = rk; i < m.rows(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j)
      if (!is_zero(r.reduced(i, m.cols() + j))) return std::nullopt;
  Matrix<T> x(m.cols(), rhs.cols(), zero);
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, m.cols() + j);
  return x;
}

template <class T>
std::optional<std::vector<T>> solve_vector(const Matrix<T>& m, const std::vector<T>& rhs, const T& zero) {
  Matrix<T> b(rhs.size(), 1, zero);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  auto x = solve(m, b, zero);
  if (!x) return std::nullopt;
  return x->column(0);
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m, const T& zero) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix<T>::identity(m.rows(), zero), zero);
}

/// Determinant by Gaussian elimination over a field.
template <class T>
T determinant(Matrix<T> m, const T& zero) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  T det = one_like(zero);
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return zero;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const T inv = one_like(zero) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      const T factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!is_zero(m(c, j))) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

}  // namespace snforge
