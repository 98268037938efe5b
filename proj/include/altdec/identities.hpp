#pragma once

// Exact structural identities between the decimation operators. Every check
// forms integer-scaled operators (rho S, Delta_bar, Delta^{-1}, ...) so both
// sides are computed without rounding; deviations are reported in units of
// the unscaled statement unless noted otherwise.

#include <array>
#include <vector>

#include "altdec/decimation.hpp"
#include "altdec/numerics.hpp"

namespace altdec {

/// D S Delta^(m) = (1/rho) Delta^(eta) D. Needs rho | m.
double verify_scaling_identity(const DecimationPlan& plan);

/// S = (1/rho) Delta_bar Delta^{-1}.
double verify_delta_bar_factorization(const DecimationPlan& plan);

/// D S~ = D S.
double verify_canonical_equality(const DecimationPlan& plan);

/// (D S)^{(m/rho1, rho2)} (D S)^{(m, rho1)} = (D S)^{(m, rho1 rho2)}. Needs
/// rho1 rho2 | m; plan.rho is ignored.
double verify_multiplicative(const DecimationPlan& plan, int rho1, int rho2);

/// D Delta_bar^r = (Delta^(eta))^r D for r = plan.r. Needs rho | m.
double verify_high_order_commutation(const DecimationPlan& plan);

struct NonCommutationReport {
  ComplexMatrix difference;    // Delta^{-1} Delta_bar Delta - Delta_bar
  double stated_deviation;     // against the all-ones column at m - rho
  double corrected_deviation;  // against that column minus ones at (l >= rho, m - 1)
};

/// Needs rho < m.
NonCommutationReport verify_non_commutation(const DecimationPlan& plan);

struct SecondOrderDefect {
  ComplexMatrix defect;              // rho^2 D S^2 Delta^2 - (Delta^(eta))^2 D
  std::vector<int> nonzero_columns;  // 1-based
  double stated_deviation;           // against e_1 placed in column m - rho alone
  double corrected_deviation;        // against +1 at (1, m - rho) when rho < m, -1 at (1, m - 1)
};

/// Needs rho | m.
SecondOrderDefect verify_second_order_defect(const DecimationPlan& plan);

struct ThirdOrderReport {
  // Each product D Delta_bar^a E ... against its closed form, with E the
  // all-ones column at m - rho and T = Delta^{-1} E Delta:
  //   (1) D Delta_bar^2 E       (2) D Delta_bar^2 T       (3) D Delta_bar E Delta_bar
  //   (4) D Delta_bar E^2       (5) D Delta_bar E T
  std::array<double, 5> item_deviation{};
  double e1_deviation = 0.0;  // (1/m) D (Delta_bar^2 T + Delta_bar E T) closed form
  double e2_deviation = 0.0;  // D (Delta_bar^2 E + Delta_bar E Delta_bar + Delta_bar E^2) closed form
  /// rho^3 D S^3 Delta^3 against D Delta_bar^3 + m E1 + E2 (integer units).
  double stated_decomposition_deviation = 0.0;
  /// The same expansion rebuilt from the exact Delta^{-1} Delta_bar Delta.
  double corrected_decomposition_deviation = 0.0;
  /// max |rho^3 D S^3 Delta^3 - (Delta^(eta))^3 D|.
  double defect_max = 0.0;
};

/// Needs rho | m and 2 rho < m.
ThirdOrderReport verify_third_order_terms(const DecimationPlan& plan);

struct CanonicalDefectReport {
  /// rho^2 D S L Delta^2 against -(rho-1) at (1, m-1) and +(rho-1) at (1, m),
  /// divided by rho^2; L = S~ - S.
  double defect_deviation = 0.0;
  /// max |D S~^2 - D S^2|; nonzero whenever rho >= 2.
  double squares_gap = 0.0;
};

/// Needs rho | m.
CanonicalDefectReport verify_canonical_second_order(const DecimationPlan& plan);

/// Test hook: while alive, every integer-scaled S built by the verifiers has
/// its (1, 1) entry perturbed, so identity failures can be exercised.
class ScopedOperatorCorruption {
 public:
  ScopedOperatorCorruption();
  ~ScopedOperatorCorruption();
  ScopedOperatorCorruption(const ScopedOperatorCorruption&) = delete;
  ScopedOperatorCorruption& operator=(const ScopedOperatorCorruption&) = delete;
};

}  // namespace altdec
