// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Parametrized 2x3 states with D < N^2.
 *
 *  rho1(a, b) = 1/(2(a^2+b^2)) * M with diagonal (a^2, b^2, 0, 0, b^2, a^2)
 *  and ab at (0,4), (1,5) and their mirrors. rho2, rho3, rho4 share the
 *  template 1/(8a+2) * M with diagonal (3a+1, a, 0, 0, a, 3a+1) and
 *  off-diagonal 2a, 2a-1, 2a-2 respectively at the same positions.
 *
 *  Validity windows: rho1 needs b > 0; rho2 0 < a <= 1; rho3 7/4 <= a <= 19/4;
 *  rho4 7/2 <= a <= 17/2. Outside them construction needs an explicit opt-in
 *  and positivity is checked rather than assumed.
 */

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdneg/measures.hpp"
#include "gdneg/state.hpp"

namespace gdneg {

enum class Family { rho1, rho2, rho3, rho4 };

inline constexpr std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::rho1: return "rho1";
    case Family::rho2: return "rho2";
    case Family::rho3: return "rho3";
    case Family::rho4: return "rho4";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::rho1, Family::rho2, Family::rho3, Family::rho4}) {
    if (to_string(f) == name) return f;
  }
  throw error(errc::unknown_family, "unknown family '" + std::string(name) + "'");
}

inline std::size_t param_count(Family f) noexcept { return f == Family::rho1 ? 2 : 1; }

struct FamilySpec {
  Family family = Family::rho1;
  std::vector<double> params;  ///< (a, b) for rho1, (a) otherwise
  bool allow_out_of_range = false;
};

/// Closed parameter window [lo, hi] of the single-parameter families; rho2's
/// lower end is open.
struct ParamWindow {
  double lo;
  double hi;
  bool lo_open;

  bool contains(double a) const { return (lo_open ? a > lo : a >= lo) && a <= hi; }
};

inline ParamWindow window_of(Family f) {
  switch (f) {
    case Family::rho2: return {0.0, 1.0, true};
    case Family::rho3: return {7.0 / 4.0, 19.0 / 4.0, false};
    case Family::rho4: return {7.0 / 2.0, 17.0 / 2.0, false};
    case Family::rho1: break;
  }
  throw error(errc::invalid_range, "rho1 has a two-parameter domain (b > 0)");
}

inline bool in_range(const FamilySpec& spec) {
  if (spec.params.size() != param_count(spec.family)) return false;
  if (spec.family == Family::rho1) return spec.params[1] > 0.0;
  return window_of(spec.family).contains(spec.params[0]);
}

namespace detail {

/// 6x6 template: diagonal (d0, d1, 0, 0, d1, d0), off-diagonal o at the two
/// coupled pairs, all scaled by `scale`.
inline ComplexMatrix two_by_three_template(double d0, double d1, double o, double scale) {
  ComplexMatrix mat(6, 6);
  mat(0, 0) = d0 * scale;
  mat(5, 5) = d0 * scale;
  mat(1, 1) = d1 * scale;
  mat(4, 4) = d1 * scale;
  for (auto [r, c] : {std::pair{0, 4}, std::pair{4, 0}, std::pair{1, 5}, std::pair{5, 1}}) {
    mat(r, c) = o * scale;
  }
  return mat;
}

inline double single_family_offset(Family f, double a) {
  switch (f) {
    case Family::rho2: return 2.0 * a;
    case Family::rho3: return 2.0 * a - 1.0;
    case Family::rho4: return 2.0 * a - 2.0;
    case Family::rho1: break;
  }
  return 0.0;
}

}  // namespace detail

/// The 6x6 family matrix, without state validation.
inline ComplexMatrix family_matrix(const FamilySpec& spec) {
  if (spec.params.size() != param_count(spec.family)) {
    throw error(errc::invalid_range, std::string(to_string(spec.family)) + " takes " +
                                         std::to_string(param_count(spec.family)) +
                                         " parameter(s)");
  }
  if (spec.family == Family::rho1) {
    const double a = spec.params[0];
    const double b = spec.params[1];
    const double denom = 2.0 * (a * a + b * b);
    if (denom == 0.0) throw error(errc::not_a_state, "rho1(0, 0) has zero trace");
    return detail::two_by_three_template(a * a, b * b, a * b, 1.0 / denom);
  }
  const double a = spec.params[0];
  const double denom = 8.0 * a + 2.0;
  if (denom == 0.0) throw error(errc::not_a_state, "normalization 8a + 2 vanishes");
  return detail::two_by_three_template(3.0 * a + 1.0, a,
                                       detail::single_family_offset(spec.family, a),
                                       1.0 / denom);
}

/// Builds and validates the family member. Out-of-window parameters need
/// spec.allow_out_of_range; a resulting non-state raises errc::not_a_state.
inline DensityMatrix build(const FamilySpec& spec) {
  if (!spec.allow_out_of_range && !in_range(spec)) {
    throw error(errc::invalid_range,
                std::string(to_string(spec.family)) + " parameters outside the validity window");
  }
  ComplexMatrix mat = family_matrix(spec);
  try {
    return {2, 3, std::move(mat)};
  } catch (const error& e) {
    throw error(errc::not_a_state, e.what(), e.residual());
  }
}

inline DensityMatrix rho1(double a, double b) { return build({Family::rho1, {a, b}, false}); }

/// Closed-form negativity of rho1(a, b): (b sqrt(b^2+4a^2) - b^2)/(a^2+b^2).
inline double rho1_negativity(double a, double b) {
  return (b * std::sqrt(b * b + 4.0 * a * a) - b * b) / (a * a + b * b);
}

struct Rho1ClosedForms {
  double negativity_sq = 0.0;
  double discord = 0.0;

  double gap() const { return negativity_sq - discord; }
};

/// N^2 and D of rho1 in terms of c = a/b. D switches branch at c^2 = 2; the
/// c^2 >= 2 branch is used on the boundary, where both agree.
inline Rho1ClosedForms rho1_closed_forms(double a, double b) {
  const double c = a / b;
  const double c2 = c * c;
  const double q = (c2 + 1.0) * (c2 + 1.0);
  Rho1ClosedForms out;
  out.negativity_sq = (4.0 * c2 + 2.0 - 2.0 * std::sqrt(4.0 * c2 + 1.0)) / q;
  out.discord = c2 >= 2.0 ? 2.0 * c2 / q : (c2 * c2 + 2.0 * c2) / (2.0 * q);
  return out;
}

/// a^2 > 2 b^2 guarantees D < N^2 for rho1(a, b). It is sufficient only: the
/// gap is also positive on part of 1 < c^2 < 2 and touches zero at c^2 = 2.
inline bool rho1_sufficient_violation(double a, double b) { return a * a > 2.0 * b * b; }

struct Violation {
  bool violates = false;
  double margin = 0.0;  ///< N^2 - D
  std::optional<bool> analytic_criterion;  ///< rho1 only: a^2 > 2b^2
};

/// Evaluates N^2 - D numerically. For rho1 the sufficient criterion is
/// cross-checked: a^2 > 2b^2 with a margin below -1e-12 is a numerical fault.
inline Violation violates(const FamilySpec& spec) {
  const DensityMatrix rho = build(spec);
  const MeasureReport r = measure_report(rho);
  Violation v;
  v.margin = r.gap();
  v.violates = v.margin > 0.0;
  if (spec.family == Family::rho1) {
    v.analytic_criterion = rho1_sufficient_violation(spec.params[0], spec.params[1]);
    if (*v.analytic_criterion && v.margin < -1e-12) {
      throw error(errc::numerical_fault, "rho1 with a^2 > 2b^2 shows no violation", v.margin);
    }
  }
  return v;
}

}  // namespace gdneg
