#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "regmaps/errors.hpp"
#include "regmaps/rational.hpp"

namespace regmaps {

// Dense row-major matrix over an exact or floating field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw InvalidArgument("matrix data size does not match shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<T>& data() const { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = a.data_[i] + b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] = a.data_[i] - b.data_[i];
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

using RationalMatrix = Matrix<Rational>;
using GaussianMatrix = Matrix<GaussianRational>;
using RealMatrix = Matrix<double>;

namespace detail {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }
inline double magnitude(double x) { return std::abs(x); }

// Index of the pivot row in column col at or below row start, or rows if none.
template <class T>
std::size_t pick_pivot(const Matrix<T>& m, std::size_t start, std::size_t col) {
  if constexpr (std::is_same_v<T, double>) {
    std::size_t best = m.rows();
    double best_mag = 0.0;
    for (std::size_t i = start; i < m.rows(); ++i) {
      if (magnitude(m(i, col)) > best_mag) {
        best_mag = magnitude(m(i, col));
        best = i;
      }
    }
    return best;
  } else {
    for (std::size_t i = start; i < m.rows(); ++i)
      if (!is_zero(m(i, col))) return i;
    return m.rows();
  }
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m, double tolerance = 0.0) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = detail::pick_pivot(m, row, col);
    if (p == m.rows()) continue;
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(m(p, col)) <= tolerance) continue;
    }
    detail::swap_rows(m, row, p);
    T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || detail::is_zero(m(i, col))) continue;
      T factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m, double tolerance = 0.0) {
  return row_reduce(m, tolerance).size();
}

template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = detail::pick_pivot(m, col, col);
    if (p == n) return T(0);
    if (p != col) {
      detail::swap_rows(m, col, p);
      det = T(0) - det;
    }
    det = det * m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (detail::is_zero(m(i, col))) continue;
      T factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - factor * m(col, j);
    }
  }
  return det;
}

// Throws NumericalFailure when the matrix is singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw NumericalFailure("matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Basis of the right null space, one column per basis vector.
template <class T>
Matrix<T> null_space(const Matrix<T>& m) {
  Matrix<T> r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<T> basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = T(0) - r(i, free_cols[k]);
  }
  return basis;
}

GaussianMatrix conjugate_transpose(const GaussianMatrix& m);
GaussianMatrix to_gaussian(const RationalMatrix& m);

// (I - A)(I + A)^{-1}: special orthogonal for skew-symmetric A, unitary for
// skew-Hermitian A.
RationalMatrix cayley(const RationalMatrix& skew);
GaussianMatrix cayley(const GaussianMatrix& skew_hermitian);

// Entry a + bi becomes the 2x2 block [[a, -b], [b, a]].
RationalMatrix realify(const GaussianMatrix& m);

bool is_skew_symmetric(const RationalMatrix& m);
bool is_skew_hermitian(const GaussianMatrix& m);

}  // namespace regmaps
