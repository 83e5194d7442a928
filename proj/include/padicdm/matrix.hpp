#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "padicdm/laurent.hpp"

namespace padicdm {

// Dense row-major matrix over a commutative ring element type T. T must be
// constructible from a long (T(0), T(1)).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(std::vector<std::vector<T>> rows) {
    if (rows.empty()) throw InvalidInput("matrix needs at least one row");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InvalidInput("matrix rows have different lengths");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = std::move(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& entries() const noexcept { return data_; }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] + b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = out.data_[k] - b.data_[k];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero_element(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (is_zero_element(b(k, j))) continue;
          out(i, j) = out(i, j) + aik * b(k, j);
        }
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!is_zero_element(x)) return false;
    return true;
  }

 private:
  static bool is_zero_element(const T& x) { return x.is_zero(); }

  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalFunctionMatrix = Matrix<RationalFunction>;

template <class T>
Matrix<T> derivative(const Matrix<T>& m) {
  return m.map([](const T& x) { return x.derivative(); });
}

inline RationalFunctionMatrix reduced(const RationalFunctionMatrix& m) {
  return m.map([](const RationalFunction& f) { return f.reduced(); });
}

// Determinant by fraction-free-ish Gaussian elimination over Q(x); entries are
// reduced after each pivot step to keep degrees in check.
inline RationalFunction determinant(RationalFunctionMatrix m) {
  if (!m.is_square()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  RationalFunction det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return RationalFunction();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det = (det * m(c, c)).reduced();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      RationalFunction factor = (m(i, c) / m(c, c)).reduced();
      for (std::size_t j = c; j < n; ++j) m(i, j) = (m(i, j) - factor * m(c, j)).reduced();
    }
  }
  return det;
}

// Inverse over Q(x) by Gauss-Jordan; nullopt when singular.
inline std::optional<RationalFunctionMatrix> inverse(RationalFunctionMatrix m) {
  if (!m.is_square()) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto inv = RationalFunctionMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    RationalFunction scale = RationalFunction(m(c, c).den(), m(c, c).num());
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = (m(c, j) * scale).reduced();
      inv(c, j) = (inv(c, j) * scale).reduced();
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      RationalFunction factor = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = (m(i, j) - factor * m(c, j)).reduced();
        inv(i, j) = (inv(i, j) - factor * inv(c, j)).reduced();
      }
    }
  }
  return inv;
}

}  // namespace padicdm
