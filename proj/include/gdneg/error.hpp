// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdneg {

enum class errc {
  not_square,
  not_hermitian,
  dimension_mismatch,
  invalid_dimension,
  invalid_state,
  wrong_dimension,
  cap_violation,
  bound_violation,
  not_a_state,
  unknown_family,
  invalid_range,
  parse_error,
  numerical_fault,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::not_square: return "NotSquare";
    case errc::not_hermitian: return "NotHermitian";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invalid_dimension: return "InvalidDimension";
    case errc::invalid_state: return "InvalidState";
    case errc::wrong_dimension: return "WrongDimension";
    case errc::cap_violation: return "CapViolation";
    case errc::bound_violation: return "BoundViolation";
    case errc::not_a_state: return "NotAState";
    case errc::unknown_family: return "UnknownFamily";
    case errc::invalid_range: return "InvalidRange";
    case errc::parse_error: return "ParseError";
    case errc::numerical_fault: return "NumericalFault";
  }
  return "Unknown";
}

/// Errors that signal a broken theorem rather than bad input.
constexpr bool is_numerical_fault(errc code) noexcept {
  return code == errc::cap_violation || code == errc::bound_violation ||
         code == errc::numerical_fault;
}

/// Single exception type for the library. `residual()` carries the measured
/// deviation for validation failures (0 when not applicable).
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what, double residual = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        residual_(residual) {}

  errc code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }

 private:
  errc code_;
  double residual_;
};

}  // namespace gdneg
