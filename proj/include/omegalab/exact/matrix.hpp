#pragma once

// Dense matrices over a field and the elimination routines built on them.

#include <cstddef>
#include <vector>

#include "omegalab/exact/cyclotomic.hpp"

namespace omegalab {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (is_zero(x(i, k))) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (!is_zero(y(k, j))) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero_matrix() const {
    for (const auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

/// Reduced row echelon form in place; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!is_zero(m(r, j))) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Basis of {x : m x = 0}.
template <class T>
std::vector<std::vector<T>> kernel(Matrix<T> m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of {y : y m = 0}.
template <class T>
std::vector<std::vector<T>> left_kernel(const Matrix<T>& m) {
  return kernel(m.transpose());
}

/// Incremental echelon basis of a subspace of T^n.
template <class T>
class RowReducer {
 public:
  explicit RowReducer(std::size_t n) : n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }

  /// Residue of v modulo the current span.
  std::vector<T> reduce(std::vector<T> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::size_t p = pivots_[k];
      if (is_zero(v[p])) continue;
      T f = v[p];
      const auto& r = rows_[k];
      for (std::size_t j = 0; j < n_; ++j)
        if (!is_zero(r[j])) v[j] -= f * r[j];
    }
    return v;
  }

  bool contains(const std::vector<T>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!is_zero(x)) return false;
    return true;
  }

  /// Adds v; returns true iff it was independent of the span.
  bool add(std::vector<T> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < n_ && is_zero(v[p])) ++p;
    if (p == n_) return false;
    T inv = T(1) / v[p];
    for (auto& x : v)
      if (!is_zero(x)) x = x * inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t n_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace omegalab
