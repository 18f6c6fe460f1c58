// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "gdneg/matrix.hpp"

namespace gdneg {

/// Max entry deviation from Hermiticity tolerated by the eigensolver.
inline constexpr double kHermitianTolerance = 1e-10;
/// Eigenvalues below this count as negative.
inline constexpr double kNegativeEigenvalueThreshold = -1e-10;

/// Real eigenvalues sorted nonincreasing; multiplicities appear as repeats.
struct Spectrum {
  std::vector<double> eigenvalues;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  double operator[](std::size_t i) const { return eigenvalues[i]; }
  double sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }
  double min() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
  double max() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
};

namespace detail {

inline double off_diagonal_norm_sq(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

/// Cyclic Jacobi on a Hermitian matrix, in place. Each pivot (p, q) is
/// annihilated by J = D R, where D rephases column q so that a(p, q) becomes
/// real and positive and R is the classical real Jacobi rotation.
inline void jacobi_diagonalize(ComplexMatrix& a) {
  constexpr double kOffDiagonalTolerance = 1e-13;
  constexpr int kMaxSweeps = 100;
  const std::size_t n = a.rows();
  const double scale = std::max(1.0, std::sqrt(hs_norm_sq(a)));
  const double target = kOffDiagonalTolerance * scale;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (std::sqrt(off_diagonal_norm_sq(a)) < target) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const complex phase = apq / mag;

        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const complex jpp = c;
        const complex jpq = s;
        const complex jqp = -s * std::conj(phase);
        const complex jqq = c * std::conj(phase);

        // a <- a J
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        // a <- J^dagger a
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k);
          const complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (std::sqrt(off_diagonal_norm_sq(a)) >= target) {
    throw error(errc::numerical_fault, "Jacobi iteration did not converge",
                std::sqrt(off_diagonal_norm_sq(a)));
  }
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, sorted nonincreasing. The input is
/// symmetrized to (a + a^dagger)/2 after passing the Hermiticity check.
inline Spectrum hermitian_eigenvalues(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw error(errc::not_square, "eigenvalues need a square matrix");
  }
  const double dev = hermitian_deviation(a);
  if (dev > kHermitianTolerance) {
    throw error(errc::not_hermitian, "Hermiticity deviation exceeds tolerance", dev);
  }
  ComplexMatrix work = (a + a.adjoint()) * complex(0.5);
  detail::jacobi_diagonalize(work);

  Spectrum out;
  out.eigenvalues.reserve(work.rows());
  for (std::size_t i = 0; i < work.rows(); ++i) out.eigenvalues.push_back(work(i, i).real());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

inline Spectrum hermitian_eigenvalues(const RealMatrix& a) {
  return hermitian_eigenvalues(to_complex(a));
}

/// Sum of |eigenvalue|; restricted to Hermitian input.
inline double trace_norm(const ComplexMatrix& a) {
  const Spectrum s = hermitian_eigenvalues(a);
  double t = 0.0;
  for (double v : s.eigenvalues) t += std::abs(v);
  return t;
}

/// Singular values of an arbitrary complex matrix, sorted nonincreasing
/// (min(rows, cols) of them). One-sided Jacobi on the shorter dimension keeps
/// small singular values accurate in absolute terms.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  ComplexMatrix w = a.rows() <= a.cols() ? a : a.adjoint();
  const std::size_t k = w.rows();
  const std::size_t len = w.cols();
  constexpr double kEps = 1e-15;
  constexpr int kMaxSweeps = 100;

  auto row_dot = [&](std::size_t p, std::size_t q) {
    complex s{};
    for (std::size_t c = 0; c < len; ++c) s += w(p, c) * std::conj(w(q, c));
    return s;
  };

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double hpp = row_dot(p, p).real();
        const double hqq = row_dot(q, q).real();
        const complex hpq = row_dot(p, q);
        const double mag = std::abs(hpq);
        if (mag == 0.0 || mag <= kEps * std::sqrt(hpp * hqq)) continue;
        rotated = true;
        const complex phase = hpq / mag;
        const double theta = (hqq - hpp) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // rows <- J^dagger rows, with J as in jacobi_diagonalize applied to W W^dagger
        const complex jqp = -s * std::conj(phase);
        const complex jqq = c * std::conj(phase);
        for (std::size_t col = 0; col < len; ++col) {
          const complex wp = w(p, col);
          const complex wq = w(q, col);
          w(p, col) = c * wp + std::conj(jqp) * wq;
          w(q, col) = s * wp + std::conj(jqq) * wq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> out(k);
  for (std::size_t p = 0; p < k; ++p) out[p] = std::sqrt(std::max(0.0, row_dot(p, p).real()));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace gdneg
