#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace altdec {

enum class ErrorCode {
  not_hermitian,
  no_convergence,
  rank_deficient,
  duplicate_frequencies,
  non_unit_base_vector,
  hypothesis_violated,
  order_exceeds_length,
  invalid_plan,
  dimension_mismatch,
  invalid_argument,
  off_lattice,
  range_overflow,
  malformed_header,
  truncated_payload,
  insufficient_points,
  config_error,
};

/// Stable snake_case name, used for CSV status fields and CLI messages.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace altdec
