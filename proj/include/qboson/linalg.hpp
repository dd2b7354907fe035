#pragma once

// Dense exact linear algebra over QRat.

#include <string>
#include <vector>

#include "scalars.hpp"

namespace qboson {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  QRat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const QRat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw error("matrix dimension mismatch in product");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const QRat& v = x(i, k);
        if (v.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (!y(k, j).is_zero()) r(i, j) += v * y(k, j);
      }
    return r;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) {
    x.require_shape(y);
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    x.require_shape(y);
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  Matrix scaled(const QRat& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
  }

  std::vector<QRat> apply(const std::vector<QRat>& v) const {
    if (v.size() != cols_) throw error("matrix-vector dimension mismatch");
    std::vector<QRat> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix m(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
    return m;
  }

  /// Reduced row echelon form; returns pivot column indices (leftmost-first).
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t p = row;
      while (p < rows_ && (*this)(p, col).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != row)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(row, j));
      const QRat inv = (*this)(row, col).inverse();
      for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || (*this)(r, col).is_zero()) continue;
        const QRat f = (*this)(r, col);
        for (std::size_t j = col; j < cols_; ++j)
          if (!(*this)(row, j).is_zero()) (*this)(r, j) -= f * (*this)(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Lexicographically first maximal set of independent columns.
  std::vector<std::size_t> pivot_columns() const {
    Matrix m = *this;
    return m.rref();
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw error("inverse of a non-square matrix");
    Matrix aug(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = 1;
    }
    const auto piv = aug.rref();
    if (piv.size() < rows_ || (rows_ > 0 && piv[rows_ - 1] >= cols_)) throw math_error("matrix is singular");
    Matrix inv(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

  /// Basis of the right kernel {v : M v = 0}, as columns of the returned matrix.
  Matrix kernel() const {
    Matrix m = *this;
    const auto piv = m.rref();
    std::vector<bool> is_piv(cols_, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!is_piv[j]) free.push_back(j);
    Matrix k(cols_, free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
      k(free[f], f) = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = -m(r, free[f]);
    }
    return k;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  void require_shape(const Matrix& y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_) throw error("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<QRat> a_;
};

}  // namespace qboson
