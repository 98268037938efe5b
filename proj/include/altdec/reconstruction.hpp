#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "altdec/decimation.hpp"
#include "altdec/frames.hpp"
#include "altdec/numerics.hpp"
#include "altdec/sigma_delta.hpp"

namespace altdec {

/// Diagonal of C-bar in the frame eigenbasis.
struct ScalingMatrix {
  ComplexVector diag;
};

/// e^{pi i (rho-1) lambda/m} sin(rho lambda pi/m) / (rho sin(lambda pi/m)),
/// equal to 1 when lambda is a multiple of m.
Complex scaling_entry(double lambda, int m, int rho);

ScalingMatrix scaling_matrix(const FrameSpec& spec, const DecimationPlan& plan);

/// ||C-bar^{-1}||_2.
double inverse_norm(const ScalingMatrix& c);

/// sin(rho x) / (rho sin x), continuous at 0.
double h_function(double x, int rho);

/// Max deviation in the commutation relation selected by the plan:
///   r = 1, harmonic: S E = E C-bar - K, K carrying m/(rho sqrt k) on rows
///                    1..rho-1 of the zero-frequency column
///   r = 1, UGF:      D S Phi = Phi_{m/rho} C-bar  (rho | m)
///   r >= 2:          S Phi = Phi C-bar  (integer lambda, none = 0 mod m)
double verify_commutation(const FrameMatrix& frame, const DecimationPlan& plan);

enum class DualKind { plain, decimated, beta, custom_v };

struct DualSpec {
  DualKind kind = DualKind::plain;
  std::optional<DecimationPlan> plan;  // decimated
  double beta = 0.0;                   // beta; 1 selects the k/m-normalized 1-dual
  std::optional<ComplexMatrix> v;      // custom_v
};

/// F = factor * P, where P maps quantized samples q to the dual's input
/// (identity for plain, D S^r for decimated, V otherwise).
struct Dual {
  DualKind kind = DualKind::plain;
  ComplexMatrix factor;
  std::optional<DecimationPlan> plan;
  ComplexMatrix v;

  std::size_t input_length() const noexcept { return factor.cols(); }
  /// P q.
  ComplexVector samples(std::span<const Complex> q) const;
  /// The k x m composed dual F.
  ComplexMatrix composed() const;
};

/// Throws RankDeficient when the relevant product fails to have rank k.
Dual build_dual(const FrameMatrix& frame, const DualSpec& spec);

/// factor * samples; samples must already be in the dual's input space.
ComplexVector reconstruct(const Dual& dual, std::span<const Complex> samples);

/// The k x m block matrix with rows [beta^{-1}, ..., beta^{-m/k}].
ComplexMatrix beta_v(int m, int k, double beta);

struct BoundReport {
  double bound_value = 0.0;
  std::string regime;
  std::vector<std::pair<std::string, double>> ingredients;

  double ingredient(const std::string& name) const;
};

/// Picks the sharpest closed-form estimate whose hypotheses hold for this
/// frame and plan, and throws HypothesisViolated if none does:
///   harmonic, r = 1, rho | m   pi^2 (k+1)/sqrt3 u k/m            (m, k even, n_j != 0)
///                              pi/2 (2 pi (k+1)/sqrt3 + 1) u k/m  (otherwise)
///   harmonic, r = 1, rho !| m  pi/2 (sigma(Fbar) + ||Fbar_eta||) u / rho
///   UGF, r = 1                 pi/(2 eta C) (2 pi max|lambda| + 1) u / rho
///   UGF, r = 2                 pi^2/(4 eta C) (9 + eta (2 pi max|lambda| / eta)^2) u / rho^2
/// Harmonic frames at r = 2 use the UGF form with c_s = 1/sqrt(k).
BoundReport error_bound(const FrameMatrix& frame, const DecimationPlan& plan, double u_inf);

/// eta * c * ceil(r log2(2 L range)), c = 2 for complex samples, range = rho
/// when r = 1 and m otherwise.
std::int64_t bit_budget(const DecimationPlan& plan, const Alphabet& a, bool complex_mode);

/// Smallest b with 2^b >= x^r (x >= 1).
int ceil_log2_pow(std::uint64_t x, int r);

}  // namespace altdec
