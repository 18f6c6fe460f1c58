// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Bloch decomposition of bipartite states over SU(m) and SU(n) generators.
 *
 *  rho = 1/(mn) [ I (x) I + sum_i x_i g_i (x) I + sum_j y_j I (x) h_j
 *                 + sum_ij T_ij g_i (x) h_j ]
 *
 *  With Tr(g_i g_j) = 2 delta_ij the coefficients are recovered as
 *      x_i    = (m/2)  Tr(rho (g_i (x) I))
 *      y_j    = (n/2)  Tr(rho (I (x) h_j))
 *      T_ij   = (mn/4) Tr(rho (g_i (x) h_j))
 */

#include <cmath>
#include <string>
#include <vector>

#include "gdneg/matrix.hpp"
#include "gdneg/spectrum.hpp"
#include "gdneg/state.hpp"
#include "gdneg/su_generators.hpp"

namespace gdneg {

/// Largest imaginary part tolerated in an extraction trace.
inline constexpr double kBlochImagTolerance = 1e-10;

struct BlochForm {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> x;  ///< length m^2 - 1
  std::vector<double> y;  ///< length n^2 - 1
  RealMatrix t;           ///< (m^2 - 1) x (n^2 - 1)

  static BlochForm zero(std::size_t m, std::size_t n) {
    return {m, n, std::vector<double>(m * m - 1), std::vector<double>(n * n - 1),
            RealMatrix(m * m - 1, n * n - 1)};
  }
};

/// xx^T + (2/n) TT^T.
struct GMatrix {
  RealMatrix g;
};

namespace detail {
inline double real_trace(complex v, const char* what) {
  if (std::abs(v.imag()) > kBlochImagTolerance) {
    throw error(errc::invalid_state,
                std::string("non-negligible imaginary part in Bloch coefficient ") + what,
                std::abs(v.imag()));
  }
  return v.real();
}
}  // namespace detail

inline BlochForm decompose(const DensityMatrix& rho) {
  const std::size_t m = rho.m();
  const std::size_t n = rho.n();
  const auto& ga = basis_for(m);
  const auto& gb = basis_for(n);
  const ComplexMatrix id_a = ComplexMatrix::identity(m);
  const ComplexMatrix id_b = ComplexMatrix::identity(n);
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);

  BlochForm bf = BlochForm::zero(m, n);
  for (std::size_t i = 0; i < ga.size(); ++i) {
    bf.x[i] = dm / 2.0 * detail::real_trace(product_expectation(rho.matrix(), ga[i], id_b), "x");
  }
  for (std::size_t j = 0; j < gb.size(); ++j) {
    bf.y[j] = dn / 2.0 * detail::real_trace(product_expectation(rho.matrix(), id_a, gb[j]), "y");
  }
  for (std::size_t i = 0; i < ga.size(); ++i)
    for (std::size_t j = 0; j < gb.size(); ++j) {
      bf.t(i, j) = dm * dn / 4.0 *
                   detail::real_trace(product_expectation(rho.matrix(), ga[i], gb[j]), "T");
    }
  return bf;
}

/// The mn x mn operator of the Bloch expansion. Hermitian with unit trace, but
/// not necessarily positive for arbitrary (x, y, T).
inline ComplexMatrix reconstruct(const BlochForm& bf) {
  const std::size_t m = bf.m;
  const std::size_t n = bf.n;
  if (m < 2 || n < 2 || bf.x.size() != m * m - 1 || bf.y.size() != n * n - 1 ||
      bf.t.rows() != m * m - 1 || bf.t.cols() != n * n - 1) {
    throw error(errc::dimension_mismatch, "Bloch data sizes inconsistent with dims " +
                                              std::to_string(m) + "x" + std::to_string(n));
  }
  const auto& ga = basis_for(m);
  const auto& gb = basis_for(n);
  const ComplexMatrix id_a = ComplexMatrix::identity(m);
  const ComplexMatrix id_b = ComplexMatrix::identity(n);

  ComplexMatrix out = ComplexMatrix::identity(m * n);
  for (std::size_t i = 0; i < ga.size(); ++i)
    if (bf.x[i] != 0.0) out += kron(ga[i], id_b) * complex(bf.x[i]);
  for (std::size_t j = 0; j < gb.size(); ++j)
    if (bf.y[j] != 0.0) out += kron(id_a, gb[j]) * complex(bf.y[j]);
  for (std::size_t i = 0; i < ga.size(); ++i)
    for (std::size_t j = 0; j < gb.size(); ++j)
      if (bf.t(i, j) != 0.0) out += kron(ga[i], gb[j]) * complex(bf.t(i, j));
  out *= complex(1.0 / static_cast<double>(m * n));
  return out;
}

/// Reconstructs and validates as a state (positivity is only checked here).
inline DensityMatrix to_density_matrix(const BlochForm& bf) {
  return {bf.m, bf.n, reconstruct(bf)};
}

inline double norm_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return s;
}

inline GMatrix g_matrix(const BlochForm& bf) {
  const std::size_t k = bf.x.size();
  const double w = 2.0 / static_cast<double>(bf.n);
  RealMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double tt = 0.0;
      for (std::size_t c = 0; c < bf.t.cols(); ++c) tt += bf.t(i, c) * bf.t(j, c);
      g(i, j) = bf.x[i] * bf.x[j] + w * tt;
    }
  return {std::move(g)};
}

}  // namespace gdneg
