// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Negativity, geometric discord and the bounds relating them.
 *
 *  Geometric discord uses the normalization
 *      D(rho) = m/(m-1) * min over von Neumann measurements Pi on A of
 *               || rho - Pi(rho) ||^2_HS,
 *  so D lies in [0, m/(m-1)] and the alternative convention
 *  D~ = (m-1)/m * D lies in [0, 1]. Only D is exposed.
 *
 *  Negativity is N(rho) = (||rho^Gamma||_1 - 1)/(m-1), with Gamma the
 *  transpose on the A factor; N lies in [0, 1].
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gdneg/bloch.hpp"
#include "gdneg/matrix.hpp"
#include "gdneg/spectrum.hpp"
#include "gdneg/state.hpp"

namespace gdneg {

/// Agreement required between the two negativity expressions.
inline constexpr double kNegativityAgreement = 1e-9;
/// Slack on the theorem bounds.
inline constexpr double kBoundSlack = 1e-9;

inline double discord_prefactor(std::size_t m) {
  return static_cast<double>(m) / static_cast<double>(m - 1);
}

inline Spectrum pt_spectrum(const DensityMatrix& rho) {
  return hermitian_eigenvalues(rho.partial_transpose());
}

/// Both negativity expressions, from one partial-transpose spectrum.
struct NegativityParts {
  double from_trace_norm = 0.0;     ///< (||rho^Gamma||_1 - 1)/(m-1)
  double from_negative_sum = 0.0;   ///< 2/(m-1) * sum over lambda < 0 of |lambda|

  double disagreement() const { return std::abs(from_trace_norm - from_negative_sum); }
};

inline NegativityParts negativity_parts(const Spectrum& pt, std::size_t m) {
  double abs_sum = 0.0;
  double neg_sum = 0.0;
  for (double v : pt.eigenvalues) {
    abs_sum += std::abs(v);
    if (v < 0.0) neg_sum -= v;
  }
  const double dm1 = static_cast<double>(m - 1);
  return {(abs_sum - 1.0) / dm1, 2.0 * neg_sum / dm1};
}

inline NegativityParts negativity_parts(const DensityMatrix& rho) {
  return negativity_parts(pt_spectrum(rho), rho.m());
}

inline double negativity(const DensityMatrix& rho) {
  const NegativityParts parts = negativity_parts(rho);
  if (parts.disagreement() > kNegativityAgreement) {
    throw error(errc::numerical_fault, "negativity expressions disagree",
                parts.disagreement());
  }
  return parts.from_negative_sum;
}

inline std::size_t pt_negative_cap(std::size_t m, std::size_t n) { return (m - 1) * (n - 1); }

inline std::size_t count_negative(const Spectrum& s) {
  return static_cast<std::size_t>(std::count_if(
      s.eigenvalues.begin(), s.eigenvalues.end(),
      [](double v) { return v < kNegativeEigenvalueThreshold; }));
}

/// Number of partial-transpose eigenvalues below -1e-10. Exceeding
/// (m-1)(n-1) is impossible for a state and raises errc::cap_violation.
inline std::size_t pt_negative_count(const DensityMatrix& rho) {
  const std::size_t count = count_negative(pt_spectrum(rho));
  const std::size_t cap = pt_negative_cap(rho.m(), rho.n());
  if (count > cap) {
    throw error(errc::cap_violation, std::to_string(count) +
                                         " negative partial-transpose eigenvalues exceed cap " +
                                         std::to_string(cap));
  }
  return count;
}

/// 2/(m(m-1)n) [ |x|^2 + (2/n)|T|^2 - (sum of the m-1 largest eigenvalues of G) ]
inline double gd_lower_bound(const BlochForm& bf) {
  const double dm = static_cast<double>(bf.m);
  const double dn = static_cast<double>(bf.n);
  const Spectrum g = hermitian_eigenvalues(g_matrix(bf).g);
  double top = 0.0;
  for (std::size_t k = 0; k + 1 < bf.m; ++k) top += g[k];
  const double bracket = norm_sq(bf.x) + 2.0 / dn * hs_norm_sq(bf.t) - top;
  double value = 2.0 / (dm * (dm - 1.0) * dn) * bracket;
  if (value < 0.0) {
    if (value < -1e-12) {
      throw error(errc::numerical_fault, "negative discord lower bound", -value);
    }
    value = 0.0;
  }
  return value;
}

inline double gd_lower_bound(const DensityMatrix& rho) { return gd_lower_bound(decompose(rho)); }

struct GeometricDiscord {
  double value = 0.0;
  bool exact = false;  ///< true iff m == 2, where the lower bound is attained
};

inline GeometricDiscord geometric_discord(const DensityMatrix& rho) {
  return {gd_lower_bound(rho), rho.m() == 2};
}

namespace detail {

inline std::array<double, 3> sphere_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

inline std::array<double, 3> normalized(std::array<double, 3> v) {
  const double s = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / s, v[1] / s, v[2] / s};
}

/// Orthonormal eigenvectors of u . sigma for eigenvalues +1 and -1.
inline std::array<std::array<complex, 2>, 2> qubit_measurement_basis(const std::array<double, 3>& u) {
  const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
  const double phi = std::atan2(u[1], u[0]);
  const complex e = std::polar(1.0, phi);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {{{c, e * s}, {-std::conj(e) * s, c}}};
}

/// ||rho - Pi(rho)||^2 for the qubit measurement along u, from the blocks
/// B_k = (<psi_k| (x) I) rho (|psi_k> (x) I):  Tr(rho^2) - sum_k ||B_k||^2.
inline double measured_distance_sq(const ComplexMatrix& rho, std::size_t n, double purity,
                                   const std::array<double, 3>& u) {
  const auto basis = qubit_measurement_basis(u);
  double kept = 0.0;
  for (const auto& psi : basis) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        complex b{};
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j)
            b += std::conj(psi[i]) * rho(i * n + k, j * n + l) * psi[j];
        kept += std::norm(b);
      }
  }
  return purity - kept;
}

}  // namespace detail

/// Direct minimization of 2 ||rho - Pi(rho)||^2 over qubit von Neumann
/// measurements {(I +- u.sigma)/2}. A resolution x 2*resolution grid over
/// the upper hemisphere locates the basin; 60 rounds of golden-section line
/// searches along two tangent directions then refine it.
inline double gd_bruteforce_2xn(const DensityMatrix& rho, std::size_t resolution = 200) {
  if (rho.m() != 2) {
    throw error(errc::wrong_dimension, "brute-force discord needs m = 2");
  }
  resolution = std::max<std::size_t>(resolution, 2);
  const std::size_t n = rho.n();
  const ComplexMatrix& mat = rho.matrix();
  const double purity = hs_norm_sq(mat);
  auto objective = [&](const std::array<double, 3>& u) {
    return detail::measured_distance_sq(mat, n, purity, u);
  };

  using std::numbers::pi;
  const double dtheta = (pi / 2.0) / static_cast<double>(resolution - 1);
  const std::size_t phi_steps = 2 * resolution;
  std::array<double, 3> best_u{0.0, 0.0, 1.0};
  double best = objective(best_u);
  for (std::size_t i = 1; i < resolution; ++i) {
    const double theta = dtheta * static_cast<double>(i);
    for (std::size_t j = 0; j < phi_steps; ++j) {
      const double phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(phi_steps);
      const auto u = detail::sphere_point(theta, phi);
      const double f = objective(u);
      if (f < best) {
        best = f;
        best_u = u;
      }
    }
  }

  constexpr int kRefineRounds = 60;
  constexpr int kGoldenSteps = 40;
  constexpr double kShrink = 0.8;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double half_width = 2.0 * dtheta;
  for (int round = 0; round < kRefineRounds; ++round) {
    // tangent frame at best_u
    const std::array<double, 3> seed =
        std::abs(best_u[0]) < 0.9 ? std::array<double, 3>{1, 0, 0} : std::array<double, 3>{0, 1, 0};
    const double proj = seed[0] * best_u[0] + seed[1] * best_u[1] + seed[2] * best_u[2];
    const auto e1 = detail::normalized(
        {seed[0] - proj * best_u[0], seed[1] - proj * best_u[1], seed[2] - proj * best_u[2]});
    const std::array<double, 3> e2{best_u[1] * e1[2] - best_u[2] * e1[1],
                                   best_u[2] * e1[0] - best_u[0] * e1[2],
                                   best_u[0] * e1[1] - best_u[1] * e1[0]};
    for (const auto& dir : {e1, e2}) {
      const auto base = best_u;
      auto along = [&](double t) {
        return detail::normalized(
            {base[0] + t * dir[0], base[1] + t * dir[1], base[2] + t * dir[2]});
      };
      double lo = -half_width;
      double hi = half_width;
      double x1 = hi - golden * (hi - lo);
      double x2 = lo + golden * (hi - lo);
      double f1 = objective(along(x1));
      double f2 = objective(along(x2));
      for (int s = 0; s < kGoldenSteps; ++s) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - golden * (hi - lo);
          f1 = objective(along(x1));
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + golden * (hi - lo);
          f2 = objective(along(x2));
        }
      }
      const double t = (lo + hi) / 2.0;
      const auto u = along(t);
      const double f = objective(u);
      if (f < best) {
        best = f;
        best_u = u;
      }
    }
    half_width *= kShrink;
  }
  return discord_prefactor(2) * std::max(best, 0.0);
}

/// Schmidt coefficients above 1e-12, nonincreasing, from the singular values
/// of the m x n coefficient matrix.
inline std::vector<double> schmidt(const PureState& phi) {
  std::vector<double> sv = singular_values(phi.coefficient_matrix());
  std::erase_if(sv, [](double c) { return c <= 1e-12; });
  return sv;
}

/// N = ((sum c_i)^2 - 1)/(m-1).
inline double pure_negativity(const std::vector<double>& coeffs, std::size_t m) {
  double s = 0.0;
  for (double c : coeffs) s += c;
  return (s * s - 1.0) / static_cast<double>(m - 1);
}

/// D = m/(m-1) * (1 - sum c_i^4).
inline double pure_gd(const std::vector<double>& coeffs, std::size_t m) {
  double s = 0.0;
  for (double c : coeffs) s += c * c * c * c;
  return discord_prefactor(m) * (1.0 - s);
}

/// Projector onto (1/sqrt(m)) sum_i |i>|i> in C^m (x) C^n.
inline DensityMatrix maximal_state(std::size_t m, std::size_t n) {
  check_dims(m, n);
  ComplexMatrix mat(m * n, m * n);
  const double w = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) mat(i * n + i, j * n + j) = w;
  return {m, n, std::move(mat)};
}

inline PureState maximal_vector(std::size_t m, std::size_t n) {
  check_dims(m, n);
  std::vector<complex> amps(m * n);
  for (std::size_t i = 0; i < m; ++i) amps[i * n + i] = 1.0 / std::sqrt(static_cast<double>(m));
  return PureState::normalized(m, n, std::move(amps));
}

struct MeasureReport {
  std::size_t m = 0;
  std::size_t n = 0;
  double negativity = 0.0;
  double negativity_sq = 0.0;
  double negativity_disagreement = 0.0;
  double discord = 0.0;
  bool discord_exact = false;
  std::size_t pt_negative_count = 0;
  std::size_t pt_negative_cap = 0;
  bool bounds_ok = false;
  std::string failure;  ///< first failed check, empty when bounds_ok

  double gap() const { return negativity_sq - discord; }
};

/// Evaluates every measure and records, without throwing, whether the
/// theorem bounds and internal consistency checks hold.
inline MeasureReport measure_report(const DensityMatrix& rho) {
  MeasureReport r;
  r.m = rho.m();
  r.n = rho.n();
  const Spectrum pt = pt_spectrum(rho);
  const NegativityParts parts = negativity_parts(pt, r.m);
  r.negativity = parts.from_negative_sum;
  r.negativity_sq = r.negativity * r.negativity;
  r.negativity_disagreement = parts.disagreement();
  const GeometricDiscord gd = geometric_discord(rho);
  r.discord = gd.value;
  r.discord_exact = gd.exact;
  r.pt_negative_count = count_negative(pt);
  r.pt_negative_cap = pt_negative_cap(r.m, r.n);

  const double dmax = discord_prefactor(r.m);
  const double gap = r.gap();
  if (r.negativity_disagreement > kNegativityAgreement) {
    r.failure = "negativity expressions disagree by " + std::to_string(r.negativity_disagreement);
  } else if (r.pt_negative_count > r.pt_negative_cap) {
    r.failure = "partial-transpose negative count exceeds (m-1)(n-1)";
  } else if (r.discord < -kBoundSlack || r.discord > dmax + kBoundSlack) {
    r.failure = "discord outside [0, m/(m-1)]";
  } else if (r.negativity < -kBoundSlack || r.negativity > 1.0 + kBoundSlack) {
    r.failure = "negativity outside [0, 1]";
  } else if (gap < -dmax - kBoundSlack || gap > 1.0 + kBoundSlack) {
    r.failure = "N^2 - D outside [-m/(m-1), 1]";
  }
  r.bounds_ok = r.failure.empty();
  return r;
}

/// measure_report that raises errc::bound_violation on any failed check.
inline MeasureReport bounds_check(const DensityMatrix& rho) {
  MeasureReport r = measure_report(rho);
  if (!r.bounds_ok) throw error(errc::bound_violation, r.failure);
  return r;
}

struct MeasurementIdentity {
  double projected_purity = 0.0;  ///< Tr(Pi(rho)^2)
  double overlap = 0.0;           ///< Tr(rho Pi(rho))
  double distance_sq = 0.0;       ///< ||rho - Pi(rho)||^2
  double purity = 0.0;            ///< Tr(rho^2)

  /// |Tr(Pi(rho)^2) - Tr(rho Pi(rho))|
  double overlap_residual() const { return std::abs(projected_purity - overlap); }
  /// | ||rho - Pi(rho)||^2 - (Tr(rho^2) - Tr(Pi(rho)^2)) |
  double distance_residual() const {
    return std::abs(distance_sq - (purity - projected_purity));
  }
};

/// Builds Pi(rho) = sum_k (P_k (x) I) rho (P_k (x) I) for P_{+-} = (I +- u.sigma)/2
/// explicitly and evaluates the traces entering the discord upper bound.
inline MeasurementIdentity measurement_identity_check(const DensityMatrix& rho,
                                                      const std::array<double, 3>& u) {
  if (rho.m() != 2) {
    throw error(errc::wrong_dimension, "qubit measurement needs m = 2");
  }
  const auto dir = detail::normalized(u);
  const ComplexMatrix u_sigma{{dir[2], complex(dir[0], -dir[1])},
                              {complex(dir[0], dir[1]), -dir[2]}};
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix id_b = ComplexMatrix::identity(rho.n());
  const ComplexMatrix& mat = rho.matrix();

  ComplexMatrix projected(mat.rows(), mat.cols());
  for (double sign : {1.0, -1.0}) {
    const ComplexMatrix p = kron((id2 + u_sigma * complex(sign)) * complex(0.5), id_b);
    projected += p * mat * p;
  }
  MeasurementIdentity out;
  out.projected_purity = (projected * projected).trace().real();
  out.overlap = (mat * projected).trace().real();
  out.distance_sq = hs_norm_sq(mat - projected);
  out.purity = hs_norm_sq(mat);
  return out;
}

}  // namespace gdneg
