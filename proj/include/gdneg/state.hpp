// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gdneg/matrix.hpp"
#include "gdneg/spectrum.hpp"

namespace gdneg {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kPureNormTolerance = 1e-12;

/// Measured residuals of the three state invariants.
struct StateCheck {
  double hermitian_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;

  bool hermitian_ok() const { return hermitian_deviation <= kHermitianTolerance; }
  bool trace_ok() const { return trace_deviation <= kTraceTolerance; }
  bool psd_ok() const { return min_eigenvalue >= -kPsdTolerance; }
  bool ok() const { return hermitian_ok() && trace_ok() && psd_ok(); }
};

inline void check_dims(std::size_t m, std::size_t n) {
  if (m < 2 || m > n) {
    throw error(errc::invalid_dimension, "bipartite dims must satisfy 2 <= m <= n, got " +
                                             std::to_string(m) + "x" + std::to_string(n));
  }
}

inline StateCheck check_state(const ComplexMatrix& mat) {
  StateCheck c;
  c.hermitian_deviation = hermitian_deviation(mat);
  const complex tr = mat.trace();
  c.trace_deviation = std::abs(tr - complex(1.0));
  if (c.hermitian_ok()) c.min_eigenvalue = hermitian_eigenvalues(mat).min();
  return c;
}

/// Hermitian, positive semidefinite, unit-trace operator on C^m (x) C^n.
class DensityMatrix {
 public:
  /// Validates; throws errc::invalid_state naming the first violated
  /// invariant with its measured residual.
  DensityMatrix(std::size_t m, std::size_t n, ComplexMatrix mat)
      : m_(m), n_(n), mat_(std::move(mat)) {
    check_dims(m_, n_);
    detail::check_bipartite(mat_, m_, n_);
    const StateCheck c = check_state(mat_);
    if (!c.hermitian_ok()) {
      throw error(errc::invalid_state, "hermiticity violated (max deviation " +
                                           std::to_string(c.hermitian_deviation) + ")",
                  c.hermitian_deviation);
    }
    if (!c.trace_ok()) {
      throw error(errc::invalid_state,
                  "trace invariant violated (|Tr - 1| = " + std::to_string(c.trace_deviation) + ")",
                  c.trace_deviation);
    }
    if (!c.psd_ok()) {
      throw error(errc::invalid_state,
                  "positivity violated (min eigenvalue " + std::to_string(c.min_eigenvalue) + ")",
                  -c.min_eigenvalue);
    }
  }

  static DensityMatrix maximally_mixed(std::size_t m, std::size_t n) {
    return {m, n, ComplexMatrix::identity(m * n) * complex(1.0 / static_cast<double>(m * n))};
  }

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_ * n_; }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  /// Marginal on the first factor.
  ComplexMatrix marginal_a() const { return partial_trace_b(mat_, m_, n_); }
  ComplexMatrix partial_transpose() const { return gdneg::partial_transpose(mat_, m_, n_); }

 private:
  std::size_t m_;
  std::size_t n_;
  ComplexMatrix mat_;
};

/// Unit vector in C^m (x) C^n, amplitude of |i>|k> at index i*n + k.
class PureState {
 public:
  PureState(std::size_t m, std::size_t n, std::vector<complex> amplitudes)
      : m_(m), n_(n), amps_(std::move(amplitudes)) {
    check_dims(m_, n_);
    if (amps_.size() != m_ * n_) {
      throw error(errc::dimension_mismatch, "amplitude count must equal m*n");
    }
    const double dev = std::abs(norm() - 1.0);
    if (dev > kPureNormTolerance) {
      throw error(errc::invalid_state, "amplitudes are not unit norm", dev);
    }
  }

  /// Rescales to unit norm before validating.
  static PureState normalized(std::size_t m, std::size_t n, std::vector<complex> amplitudes) {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    if (s == 0.0) throw error(errc::invalid_state, "zero vector cannot be normalized");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : amplitudes) a *= inv;
    return {m, n, std::move(amplitudes)};
  }

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  const std::vector<complex>& amplitudes() const noexcept { return amps_; }

  /// The m x n coefficient matrix psi(i, k).
  ComplexMatrix coefficient_matrix() const { return {m_, n_, amps_}; }

  DensityMatrix projector() const {
    const std::size_t d = amps_.size();
    ComplexMatrix p(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) p(r, c) = amps_[r] * std::conj(amps_[c]);
    return {m_, n_, std::move(p)};
  }

 private:
  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<complex> amps_;
};

}  // namespace gdneg
