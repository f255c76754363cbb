#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qds/scalar.hpp"

namespace qds {

template <class T>
using Vec = std::vector<T>;

/// Dense row-major matrix over either scalar mode.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(const std::vector<Vec<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: ragged input");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vec<T> column(std::size_t j) const {
    Vec<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix conjugate() const {
    Matrix c(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) c.data_[k] = conj_of(data_[k]);
    return c;
  }
  Matrix adjoint() const { return transpose().conjugate(); }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec<T> operator*(const Matrix& a, const Vec<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("Matrix-vector product: dimension mismatch");
    Vec<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!is_zero(v[k])) out[i] += a(i, k) * v[k];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0;
  for (const auto& x : m.data()) {
    const double a = magnitude(x);
    s += a * a;
  }
  return std::sqrt(s);
}

template <class T>
double max_abs(const Matrix<T>& m) {
  double s = 0;
  for (const auto& x : m.data()) s = std::max(s, magnitude(x));
  return s;
}

template <class T>
double max_abs(const Vec<T>& v) {
  double s = 0;
  for (const auto& x : v) s = std::max(s, magnitude(x));
  return s;
}

template <class T>
double norm2(const Vec<T>& v) {
  double s = 0;
  for (const auto& x : v) {
    const double a = magnitude(x);
    s += a * a;
  }
  return std::sqrt(s);
}

template <class T>
Vec<T> operator+(Vec<T> a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
Vec<T> operator-(Vec<T> a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector difference: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T>
Vec<T> scaled(Vec<T> a, const T& s) {
  for (auto& x : a) x *= s;
  return a;
}

template <class T>
Vec<T> conjugated(Vec<T> a) {
  for (auto& x : a) x = conj_of(x);
  return a;
}

/// Converts exact data to floating point; the identity on complex input.
template <class T>
Matrix<Complex> to_complex(const Matrix<T>& m) {
  Matrix<Complex> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m(i, j));
  return out;
}

template <class T>
Vec<Complex> to_complex(const Vec<T>& v) {
  Vec<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_complex(v[i]);
  return out;
}

}  // namespace qds
