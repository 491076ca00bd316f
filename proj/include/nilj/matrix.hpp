#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nilj/scalar.hpp"

namespace nilj {

/// Dense row-major matrix over an exact ring. `T` must provide `+ - *`,
/// equality, `is_zero(const T&)` and, for the fraction-free routines,
/// `exact_div(const T&, const T&)`.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one, const T& zero = T()) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }
  void set_column(std::size_t c, std::span<const T> v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }
  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(r, k);
        if (is_zero(x)) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += x * b(k, c);
      }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!is_zero(v[c])) out[r] += (*this)(r, c) * v[c];
    return out;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;

/// Rank over the fraction field by Bareiss fraction-free elimination.
/// Every division is exact in the base ring, so no fractions appear.
template <class T>
std::size_t rank(Matrix<T> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  T prev_pivot;
  bool have_prev = false;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    const T pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        T v = m(i, j) * pivot - m(i, c) * m(r, j);
        m(i, j) = have_prev ? exact_div(v, prev_pivot) : std::move(v);
      }
      m(i, c) = T();
    }
    prev_pivot = pivot;
    have_prev = true;
    ++r;
  }
  return r;
}

/// Determinant by Bareiss elimination; zero for singular input.
template <class T>
T determinant(Matrix<T> m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) throw Error(ErrorCode::Degenerate, "determinant of empty matrix");
  bool negate = false;
  T prev_pivot;
  bool have_prev = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(m(p, k))) ++p;
    if (p == n) return T();
    if (p != k) {
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = have_prev ? exact_div(v, prev_pivot) : std::move(v);
      }
      m(i, k) = T();
    }
    prev_pivot = m(k, k);
    have_prev = true;
  }
  T d = m(n - 1, n - 1);
  return negate ? T() - d : d;
}

/// Transposed cofactor matrix; `adjugate(m) * m == det(m) * I`.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  Matrix<T> adj(n, n);
  if (n == 1) {
    adj(0, 0) = T(1);
    return adj;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Matrix<T> minor(n - 1, n - 1);
      for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj++) = m(i, j);
        }
        ++mi;
      }
      T cof = determinant(std::move(minor));
      adj(c, r) = (r + c) % 2 == 0 ? cof : T() - cof;
    }
  return adj;
}

// Field-only routines over Scalar.

/// Reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref_in_place(ScalarMatrix& m);

/// Rows form an echelon basis of the row space of `m`.
ScalarMatrix row_space(const ScalarMatrix& m);

/// Rows form a basis of {x : m x = 0}.
ScalarMatrix nullspace(const ScalarMatrix& m);

/// Inverse via Gauss-Jordan; std::nullopt when singular.
std::optional<ScalarMatrix> try_inverse(const ScalarMatrix& m);
ScalarMatrix inverse(const ScalarMatrix& m);

ScalarMatrix identity_matrix(std::size_t n);

/// Matrix whose columns are the given vectors.
ScalarMatrix from_columns(std::span<const std::vector<Scalar>> cols);

}  // namespace nilj
