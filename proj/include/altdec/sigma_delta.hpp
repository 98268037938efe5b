#pragma once

#include <span>

#include "altdec/frames.hpp"
#include "altdec/numerics.hpp"

namespace altdec {

// Mid-rise uniform alphabet {(2j+1) delta/2 : -L <= j <= L-1}, complexified
// componentwise when complex_mode is set.
struct Alphabet {
  int L = 100;
  double delta = 0.5;
  bool complex_mode = true;

  double level(int j) const noexcept { return (2.0 * j + 1.0) * delta / 2.0; }
  double max_level() const noexcept { return level(L - 1); }
  /// Arguments beyond this magnitude saturate the quantizer.
  double range() const noexcept { return L * delta; }
};

void validate(const Alphabet& a);

/// Nearest level; exact midpoints go to the larger level and out-of-range
/// values clamp to the extreme level. In real mode the imaginary part is
/// discarded.
Complex round_off(Complex v, const Alphabet& a);

struct QuantizationRun {
  ComplexVector y;
  ComplexVector q;
  ComplexVector u;
  int order = 1;
  double u_inf = 0.0;
  bool overloaded = false;
};

/// Greedy r-th order scheme with zero initial state:
///   s_n = sum_{l=1}^r (-1)^{l+1} C(r,l) u_{n-l},  q_n = Q(s_n + y_n),
///   u_n = s_n + y_n - q_n,
/// so that y - q = Delta^r u.
QuantizationRun sigma_delta(std::span<const Complex> y, int r, const Alphabet& a);

/// Applies the backward difference `times` times (v_0 = 0 convention).
ComplexVector backward_difference(std::span<const Complex> v, int times);

/// ||(y - q) - Delta^r u||_inf.
double residual_check(const QuantizationRun& run);

/// Endpoint state max(|Re u_m|, |Im u_m|) of a first-order run on a zero-sum
/// frame. Throws HypothesisViolated for r != 1 or a frame failing the
/// zero-sum test.
double parity_endpoint(const QuantizationRun& run, const FrameMatrix& frame);

}  // namespace altdec
