// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Small dense matrices and the bipartite operations built on them.
 *
 *  Storage is row-major. Bipartite operators on C^m (x) C^n index rows and
 *  columns as i*n + k, with i the A-side index and k the B-side index, so that
 *  kron(a, b) places a(i, j) * b(k, l) at (i*n + k, j*n + l).
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "gdneg/error.hpp"

namespace gdneg {

using complex = std::complex<double>;

namespace detail {
template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
constexpr T conj_if(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::conj(v);
  } else {
    return v;
  }
}
}  // namespace detail

template <class Scalar>
class Matrix {
 public:
  using value_type = Scalar;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw error(errc::dimension_mismatch,
                  "entry count " + std::to_string(data_.size()) +
                      " != rows*cols " + std::to_string(rows_ * cols_));
    }
  }
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw error(errc::dimension_mismatch, "ragged initializer list");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = Scalar{1};
    return out;
  }

  static Matrix diagonal(std::span<const Scalar> d) {
    Matrix out(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Scalar> entries() const noexcept { return data_; }
  std::span<Scalar> entries() noexcept { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out(c, r) = detail::conj_if((*this)(r, c));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  Scalar trace() const {
    Scalar t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw error(errc::dimension_mismatch, "matrix product inner dimensions differ");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar aik = a(i, k);
        if (aik == Scalar{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw error(errc::dimension_mismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using ComplexMatrix = Matrix<complex>;
using RealMatrix = Matrix<double>;

inline ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  return out;
}

template <class Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// max |a(i,j) - conj(a(j,i))|; infinite for non-square input.
template <class Scalar>
double hermitian_deviation(const Matrix<Scalar>& a) {
  if (!a.is_square()) return INFINITY;
  double dev = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      dev = std::max(dev, std::abs(a(i, j) - detail::conj_if(a(j, i))));
  return dev;
}

/// Sum of squared moduli of the entries, i.e. Tr(a^dagger a).
template <class Scalar>
double hs_norm_sq(const Matrix<Scalar>& a) {
  double s = 0.0;
  for (const auto& v : a.entries()) s += std::norm(v);
  return s;
}

namespace detail {
template <class Scalar>
void check_bipartite(const Matrix<Scalar>& a, std::size_t m, std::size_t n) {
  if (m == 0 || n == 0 || a.rows() != m * n || a.cols() != m * n) {
    throw error(errc::dimension_mismatch,
                "expected a " + std::to_string(m * n) + "x" + std::to_string(m * n) +
                    " operator for dims " + std::to_string(m) + "x" +
                    std::to_string(n) + ", got " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  }
}
}  // namespace detail

/// Transpose on the A factor: |i><j| (x) |k><l|  ->  |j><i| (x) |k><l|.
/// A pure entry permutation, hence an exact involution.
template <class Scalar>
Matrix<Scalar> partial_transpose(const Matrix<Scalar>& a, std::size_t m, std::size_t n) {
  detail::check_bipartite(a, m, n);
  Matrix<Scalar> out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          out(j * n + k, i * n + l) = a(i * n + k, j * n + l);
  return out;
}

/// Marginal on A: traces out the n-dimensional B factor.
template <class Scalar>
Matrix<Scalar> partial_trace_b(const Matrix<Scalar>& a, std::size_t m, std::size_t n) {
  detail::check_bipartite(a, m, n);
  Matrix<Scalar> out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Scalar s{};
      for (std::size_t k = 0; k < n; ++k) s += a(i * n + k, j * n + k);
      out(i, j) = s;
    }
  return out;
}

/// Marginal on B: traces out the m-dimensional A factor.
template <class Scalar>
Matrix<Scalar> partial_trace_a(const Matrix<Scalar>& a, std::size_t m, std::size_t n) {
  detail::check_bipartite(a, m, n);
  Matrix<Scalar> out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Scalar s{};
      for (std::size_t i = 0; i < m; ++i) s += a(i * n + k, i * n + l);
      out(k, l) = s;
    }
  return out;
}

/// Tr(rho (a (x) b)) without forming the Kronecker product.
inline complex product_expectation(const ComplexMatrix& rho, const ComplexMatrix& a,
                                   const ComplexMatrix& b) {
  const std::size_t m = a.rows();
  const std::size_t n = b.rows();
  detail::check_bipartite(rho, m, n);
  complex s{};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const complex aji = a(j, i);
      if (aji == complex{}) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const complex blk = b(l, k);
          if (blk == complex{}) continue;
          s += rho(i * n + k, j * n + l) * aji * blk;
        }
    }
  return s;
}

}  // namespace gdneg
