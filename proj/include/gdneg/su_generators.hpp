// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Ordered generator bases of SU(d), normalized to Tr(g_i g_j) = 2 delta_ij.
 *
 *  d = 2: the Pauli matrices sigma_1, sigma_2, sigma_3.
 *  d = 3: the Gell-Mann matrices mu_1 .. mu_8 in their conventional order.
 *  d >= 4: generalized Gell-Mann matrices. For each index pair (j, k), j < k,
 *  in lexicographic order, the symmetric generator E_jk + E_kj is followed by
 *  the antisymmetric one -i E_jk + i E_kj; the d - 1 diagonal generators come
 *  last, in increasing rank l = 1 .. d-1:
 *      sqrt(2 / (l (l+1))) * (E_00 + ... + E_{l-1,l-1} - l E_ll).
 */

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gdneg/matrix.hpp"

namespace gdneg {

struct GeneratorBasis {
  std::size_t d = 0;
  std::vector<ComplexMatrix> generators;

  std::size_t size() const noexcept { return generators.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return generators[i]; }
};

namespace detail {

inline ComplexMatrix symmetric_unit(std::size_t d, std::size_t j, std::size_t k) {
  ComplexMatrix g(d, d);
  g(j, k) = 1.0;
  g(k, j) = 1.0;
  return g;
}

inline ComplexMatrix antisymmetric_unit(std::size_t d, std::size_t j, std::size_t k) {
  ComplexMatrix g(d, d);
  g(j, k) = complex(0.0, -1.0);
  g(k, j) = complex(0.0, 1.0);
  return g;
}

inline ComplexMatrix diagonal_generator(std::size_t d, std::size_t rank) {
  ComplexMatrix g(d, d);
  const double norm = std::sqrt(2.0 / static_cast<double>(rank * (rank + 1)));
  for (std::size_t j = 0; j < rank; ++j) g(j, j) = norm;
  g(rank, rank) = -norm * static_cast<double>(rank);
  return g;
}

inline GeneratorBasis build_basis(std::size_t d) {
  GeneratorBasis basis{d, {}};
  basis.generators.reserve(d * d - 1);
  if (d == 3) {
    basis.generators = {
        symmetric_unit(3, 0, 1),     antisymmetric_unit(3, 0, 1), diagonal_generator(3, 1),
        symmetric_unit(3, 0, 2),     antisymmetric_unit(3, 0, 2), symmetric_unit(3, 1, 2),
        antisymmetric_unit(3, 1, 2), diagonal_generator(3, 2),
    };
    return basis;
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      basis.generators.push_back(symmetric_unit(d, j, k));
      basis.generators.push_back(antisymmetric_unit(d, j, k));
    }
  for (std::size_t rank = 1; rank < d; ++rank) {
    basis.generators.push_back(diagonal_generator(d, rank));
  }
  return basis;
}

}  // namespace detail

/// Generator basis for SU(d). Built once per d; the returned reference stays
/// valid for the lifetime of the program.
inline const GeneratorBasis& basis_for(std::size_t d) {
  if (d < 2) {
    throw error(errc::invalid_dimension,
                "SU(d) generators need d >= 2, got " + std::to_string(d));
  }
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const GeneratorBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<const GeneratorBasis>(detail::build_basis(d));
  return *slot;
}

}  // namespace gdneg
