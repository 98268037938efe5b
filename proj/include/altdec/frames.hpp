#pragma once

// Finite harmonic and unitarily generated frames. Row index l of an analysis
// operator runs 1..m in the formulas below; storage is 0-based.

#include <span>
#include <variant>
#include <vector>

#include "altdec/numerics.hpp"

namespace altdec {

struct HarmonicFrameSpec {
  int m = 0;
  int k = 0;
  std::vector<long long> freqs;  // n_j, pairwise distinct
};

// Unitarily generated frame in the eigenbasis of its generator: eigenvalues
// lambda_s and coordinates c_s of the base vector.
struct UgfSpec {
  int m = 0;
  int k = 0;
  std::vector<double> eigenvalues;
  ComplexVector base_coeffs;
};

using FrameSpec = std::variant<HarmonicFrameSpec, UgfSpec>;

struct FrameMatrix {
  ComplexMatrix E;  // m x k, rows are conjugated frame vectors
  FrameSpec spec;
};

/// E(l, j) = exp(-2 pi i n_j l / m) / sqrt(k).
FrameMatrix harmonic_frame(const HarmonicFrameSpec& spec);

/// E(l, j) = exp(-2 pi i (l+1)(j+1) / m) / sqrt(k) with 0-based l, j. This is
/// harmonic_frame with freqs {1, ..., k}, and the spec is recorded that way.
FrameMatrix appendix_b_frame(int m, int k);

/// Phi(l, s) = conj(c_s) exp(-2 pi i lambda_s l / m).
FrameMatrix ugf_frame(const UgfSpec& spec);

/// Diagonalizes Omega and expresses phi0 in its eigenbasis (c_s = <phi0, v_s>).
UgfSpec ugf_from_generator(const ComplexMatrix& omega, std::span<const Complex> phi0, int m);

/// A harmonic spec read as the tight UGF it is (c_s = 1/sqrt(k), lambda = n).
UgfSpec as_ugf(const FrameSpec& spec);

/// Same family with m replaced; used for the sub-sampled frames Phi_{m/rho,k}.
FrameSpec with_length(const FrameSpec& spec, int m);

/// Spectral data shared by both families.
std::vector<double> frame_eigenvalues(const FrameSpec& spec);
int frame_length(const FrameSpec& spec);
int frame_dimension(const FrameSpec& spec);

/// sum_t ||A_t - A_{t+1}||_2 over consecutive columns.
double frame_variation(const ComplexMatrix& columns);

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extreme eigenvalues of E*E.
FrameBounds frame_bounds(const ComplexMatrix& e);
FrameBounds frame_bounds(const FrameMatrix& frame);

/// ||sum_l row_l||_2 <= 1e-9 m.
bool zero_sum_check(const FrameMatrix& frame);

/// Distinct integer frequencies inside [-k/2, k/2].
bool harmonic_regime(const HarmonicFrameSpec& spec);

/// Integer eigenvalues inside [-eta/2, eta/2] and min |c_s| > 0.
bool ugf_regime(const UgfSpec& spec, int eta);

}  // namespace altdec
