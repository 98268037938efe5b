#pragma once

// Decimation operators on C^m (all indices 1-based in the descriptions):
//   S_rho        alternative averager: rows l >= rho average v_{l-rho+1..l};
//                rows l < rho carry -1/rho on columns l+1..m-rho+l
//   S~_rho       circulant averager over v_{l-rho+1..l}, indices mod m
//   D_rho        keeps samples rho, 2 rho, ..., eta rho with eta = floor(m/rho)
//   Delta        backward difference
//   Delta_bar    (Delta_bar v)_l = v_l - v_{l-rho mod m}, the subtraction
//                skipped when l - rho = 0 mod m

#include <span>
#include <vector>

#include "altdec/numerics.hpp"

namespace altdec {

enum class Variant { alternative, canonical };

struct DecimationPlan {
  int m = 1;
  int rho = 1;
  int r = 1;
  Variant variant = Variant::alternative;
  int eta = 1;

  bool divides() const noexcept { return m % rho == 0; }
};

/// Throws InvalidPlan unless 1 <= rho <= m and r >= 1.
DecimationPlan make_plan(int m, int rho, int r = 1, Variant variant = Variant::alternative);

enum class OpKind { S_rho, S_tilde_rho, D_rho, Delta, Delta_bar_rho, composition };

class StructuredOperator {
 public:
  static StructuredOperator build(OpKind kind, const DecimationPlan& plan);
  /// Product factors[0] * factors[1] * ... (rightmost acts first).
  static StructuredOperator compose(std::vector<StructuredOperator> factors);

  OpKind kind() const noexcept { return kind_; }
  const DecimationPlan& plan() const noexcept { return plan_; }
  std::size_t rows() const noexcept;
  std::size_t cols() const noexcept;

  /// O(m) per elementary factor.
  ComplexVector apply(std::span<const Complex> v) const;
  ComplexMatrix dense() const;

 private:
  OpKind kind_ = OpKind::Delta;
  DecimationPlan plan_;
  std::vector<StructuredOperator> factors_;
};

/// D_rho S^r q with S = S_rho or S~_rho per plan.variant; length eta.
ComplexVector decimate(std::span<const Complex> q, const DecimationPlan& plan);

/// The eta x m matrix D_rho S^r.
ComplexMatrix decimation_matrix(const DecimationPlan& plan);

}  // namespace altdec
