#include "altdec/errors.hpp"

namespace altdec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_hermitian: return "not_hermitian";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::rank_deficient: return "rank_deficient";
    case ErrorCode::duplicate_frequencies: return "duplicate_frequencies";
    case ErrorCode::non_unit_base_vector: return "non_unit_base_vector";
    case ErrorCode::hypothesis_violated: return "hypothesis_violated";
    case ErrorCode::order_exceeds_length: return "order_exceeds_length";
    case ErrorCode::invalid_plan: return "invalid_plan";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::off_lattice: return "off_lattice";
    case ErrorCode::range_overflow: return "range_overflow";
    case ErrorCode::malformed_header: return "malformed_header";
    case ErrorCode::truncated_payload: return "truncated_payload";
    case ErrorCode::insufficient_points: return "insufficient_points";
    case ErrorCode::config_error: return "config_error";
  }
  return "unknown";
}

}  // namespace altdec
