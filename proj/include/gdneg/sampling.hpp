// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Seeded random states.
 *
 *  Generator: std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(stream)).
 *  Uniforms take the top 53 bits of each draw, u = (x >> 11) * 2^-53.
 *  Standard normals come from Box-Muller pairs, z = sqrt(-2 ln(1 - u1)) *
 *  {cos, sin}(2 pi u2), emitted cosine first. A complex Gaussian takes two
 *  consecutive normals as (re, im).
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "gdneg/matrix.hpp"
#include "gdneg/state.hpp"

namespace gdneg {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed ^ splitmix64(stream))) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class Ensemble { hilbert_schmidt, pure };

inline Ensemble parse_ensemble(std::string_view name) {
  if (name == "hilbert-schmidt" || name == "hs") return Ensemble::hilbert_schmidt;
  if (name == "pure") return Ensemble::pure;
  throw error(errc::parse_error, "unknown ensemble '" + std::string(name) +
                                     "' (expected hilbert-schmidt or pure)");
}

inline constexpr std::string_view to_string(Ensemble e) noexcept {
  return e == Ensemble::pure ? "pure" : "hilbert-schmidt";
}

inline PureState random_pure_state(std::size_t m, std::size_t n, Rng& rng) {
  std::vector<complex> amps(m * n);
  for (auto& a : amps) a = rng.complex_normal();
  return PureState::normalized(m, n, std::move(amps));
}

namespace detail {
inline void enforce_hermitian(ComplexMatrix& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < a.cols(); ++c) a(c, r) = std::conj(a(r, c));
  }
}
}  // namespace detail

/// G G^dagger / Tr(G G^dagger) for a d x d complex Ginibre matrix G.
inline ComplexMatrix random_hs_matrix(std::size_t d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (auto& v : g.entries()) v = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho *= complex(1.0 / rho.trace().real());
  detail::enforce_hermitian(rho);
  return rho;
}

inline DensityMatrix random_hs_state(std::size_t m, std::size_t n, Rng& rng) {
  return {m, n, random_hs_matrix(m * n, rng)};
}

inline DensityMatrix random_state(std::size_t m, std::size_t n, Ensemble e, Rng& rng) {
  return e == Ensemble::pure ? random_pure_state(m, n, rng).projector()
                             : random_hs_state(m, n, rng);
}

/// rho = sum_k p_k |psi_k><psi_k| (x) sigma_k with {psi_k} a random orthonormal
/// basis of C^m; such states have zero geometric discord.
inline DensityMatrix random_classical_quantum_state(std::size_t m, std::size_t n, Rng& rng) {
  // Gram-Schmidt on Gaussian vectors
  std::vector<std::vector<complex>> basis;
  while (basis.size() < m) {
    std::vector<complex> v(m);
    for (auto& c : v) c = rng.complex_normal();
    for (const auto& b : basis) {
      complex dot{};
      for (std::size_t i = 0; i < m; ++i) dot += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < m; ++i) v[i] -= dot * b[i];
    }
    double nrm = 0.0;
    for (const auto& c : v) nrm += std::norm(c);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (auto& c : v) c /= nrm;
    basis.push_back(std::move(v));
  }
  std::vector<double> p(m);
  double total = 0.0;
  for (auto& w : p) total += (w = rng.uniform() + 1e-3);
  ComplexMatrix rho(m * n, m * n);
  for (std::size_t k = 0; k < m; ++k) {
    ComplexMatrix proj(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) proj(i, j) = basis[k][i] * std::conj(basis[k][j]);
    rho += kron(proj, random_hs_matrix(n, rng)) * complex(p[k] / total);
  }
  detail::enforce_hermitian(rho);
  return {m, n, std::move(rho)};
}

}  // namespace gdneg
