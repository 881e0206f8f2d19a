#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dist235/errors.hpp"
#include "dist235/rational_function.hpp"
#include "dist235/series.hpp"

namespace dist235 {

inline bool is_exact_zero(const RationalFunction& f) { return f.is_zero(); }
inline bool is_unit(const RationalFunction& f) { return !f.is_zero(); }
inline RationalFunction unit_inverse(const RationalFunction& f) { return f.inverse(); }
inline RationalFunction zero_like(const RationalFunction& f) { return RationalFunction(f.nvars()); }

/// Dense row-major matrix over an exact ring. Elimination only pivots on
/// units (nonzero field elements, or series with invertible constant term).
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& zero)
      : rows_(rows), cols_(cols), a_(rows * cols, zero) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_like(a_.front()));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error("matrix shape mismatch");
    Matrix r(x.rows_, y.cols_, zero_like(x.a_.front()));
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (is_exact_zero(x(i, k))) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }

  template <class F>
  Matrix map(F&& f) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = f(x);
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

/// Gauss-Jordan reduction of [a | b]. Returns the solution x of a x = b for
/// square invertible a; throws DegeneracyError when no unit pivot exists.
template <class T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b) {
  std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw Error("solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r)
      if (is_unit(a(r, col))) {
        piv = r;
        break;
      }
    if (piv == n) throw DegeneracyError("singular matrix (no unit pivot)");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(piv, j), b(col, j));
    }
    T inv = unit_inverse(a(col, col));
    for (std::size_t j = 0; j < n; ++j) a(col, j) = a(col, j) * inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b(col, j) = b(col, j) * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_exact_zero(a(r, col))) continue;
      T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
    }
  }
  return b;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a, const T& one) {
  return solve(a, Matrix<T>::identity(a.rows(), zero_like(one), one));
}

/// Rank over a field (Rational or RationalFunction).
template <class T>
std::size_t rank(Matrix<T> a) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t piv = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (!is_exact_zero(a(i, col))) {
        piv = i;
        break;
      }
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    T inv = unit_inverse(a(r, col));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (is_exact_zero(a(i, col))) continue;
      T f = a(i, col) * inv;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Determinant over a field by elimination.
template <class T>
T determinant(Matrix<T> a, const T& one) {
  std::size_t n = a.rows();
  T det = one;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r)
      if (!is_exact_zero(a(r, col))) {
        piv = r;
        break;
      }
    if (piv == n) return zero_like(one);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det = det * a(col, col);
    T inv = unit_inverse(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_exact_zero(a(r, col))) continue;
      T f = a(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Determinant of a 2x2 matrix over any commutative ring.
template <class T>
T det2(const Matrix<T>& a) {
  return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

using RationalMatrix = Matrix<Rational>;
using SeriesMatrix = Matrix<JetSeries>;

}  // namespace dist235
