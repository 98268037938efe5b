#include "altdec/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::abs(x)); }

bool multiple_of(double lambda, int m) {
  return is_integer(lambda) && std::llround(lambda) % m == 0;
}

// Applies a matrix-free operator to every column of e.
template <class Op>
ComplexMatrix map_columns(const ComplexMatrix& e, std::size_t out_rows, Op op) {
  ComplexMatrix out(out_rows, e.cols());
  for (std::size_t j = 0; j < e.cols(); ++j) out.set_col(j, op(e.col(j)));
  return out;
}

ComplexMatrix scale_columns(ComplexMatrix a, std::span<const Complex> d) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= d[j];
  return a;
}

const HarmonicFrameSpec* harmonic_of(const FrameMatrix& frame) { return std::get_if<HarmonicFrameSpec>(&frame.spec); }

}  // namespace

Complex scaling_entry(double lambda, int m, int rho) {
  if (multiple_of(lambda, m)) return 1.0;
  const double x = lambda * kPi / m;
  const double modulus = std::sin(rho * x) / (rho * std::sin(x));
  return std::polar(1.0, (rho - 1) * x) * modulus;
}

ScalingMatrix scaling_matrix(const FrameSpec& spec, const DecimationPlan& plan) {
  ScalingMatrix c;
  for (double lambda : frame_eigenvalues(spec)) c.diag.push_back(scaling_entry(lambda, plan.m, plan.rho));
  return c;
}

double inverse_norm(const ScalingMatrix& c) {
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& z : c.diag) smallest = std::min(smallest, std::abs(z));
  return 1.0 / smallest;
}

double h_function(double x, int rho) {
  if (x == 0.0) return 1.0;
  return std::sin(rho * x) / (rho * std::sin(x));
}

double verify_commutation(const FrameMatrix& frame, const DecimationPlan& plan) {
  const int m = plan.m;
  const int rho = plan.rho;
  if (static_cast<int>(frame.E.rows()) != m) throw Error(ErrorCode::dimension_mismatch, "frame size differs from plan");
  const auto lambdas = frame_eigenvalues(frame.spec);
  const auto c = scaling_matrix(frame.spec, plan);
  const auto s_op = StructuredOperator::build(OpKind::S_rho, plan);
  auto apply_s = [&](const ComplexVector& v) { return s_op.apply(v); };

  if (plan.r == 1 && harmonic_of(frame) != nullptr) {
    const auto& h = *harmonic_of(frame);
    const ComplexMatrix lhs = map_columns(frame.E, m, apply_s);
    ComplexMatrix rhs = scale_columns(frame.E, c.diag);
    const double k_entry = m / (rho * std::sqrt(static_cast<double>(h.k)));
    for (int j = 0; j < h.k; ++j) {
      if (h.freqs[j] % m != 0) continue;
      for (int l = 0; l < rho - 1; ++l) rhs(l, j) -= k_entry;
    }
    return max_abs_diff(lhs, rhs);
  }

  for (double lambda : lambdas) {
    if (!is_integer(lambda)) throw Error(ErrorCode::hypothesis_violated, "non-integer eigenvalue");
  }
  if (plan.r == 1) {
    if (!plan.divides()) throw Error(ErrorCode::hypothesis_violated, "needs rho | m");
    const auto d_op = StructuredOperator::build(OpKind::D_rho, plan);
    const ComplexMatrix lhs =
        map_columns(frame.E, plan.eta, [&](const ComplexVector& v) { return d_op.apply(s_op.apply(v)); });
    const ComplexMatrix sub = ugf_frame(as_ugf(with_length(frame.spec, plan.eta))).E;
    return max_abs_diff(lhs, scale_columns(sub, c.diag));
  }
  for (double lambda : lambdas) {
    if (multiple_of(lambda, m)) throw Error(ErrorCode::hypothesis_violated, "eigenvalue is 0 mod m");
  }
  const ComplexMatrix lhs = map_columns(frame.E, m, apply_s);
  return max_abs_diff(lhs, scale_columns(frame.E, c.diag));
}

ComplexVector Dual::samples(std::span<const Complex> q) const {
  switch (kind) {
    case DualKind::plain:
      if (q.size() != factor.cols()) throw Error(ErrorCode::dimension_mismatch, "sample length");
      return ComplexVector(q.begin(), q.end());
    case DualKind::decimated:
      return decimate(q, *plan);
    case DualKind::beta:
    case DualKind::custom_v:
      return v * q;
  }
  return {};
}

ComplexMatrix Dual::composed() const {
  switch (kind) {
    case DualKind::plain:
      return factor;
    case DualKind::decimated:
      return factor * decimation_matrix(*plan);
    case DualKind::beta:
    case DualKind::custom_v:
      return factor * v;
  }
  return {};
}

ComplexMatrix beta_v(int m, int k, double beta) {
  if (k < 1 || m % k != 0) throw Error(ErrorCode::invalid_argument, "beta dual needs k | m");
  if (!(beta >= 1.0)) throw Error(ErrorCode::invalid_argument, "beta must be >= 1");
  const int block = m / k;
  ComplexMatrix v(k, m);
  const double norm = beta == 1.0 ? static_cast<double>(k) / m : 1.0;
  for (int i = 0; i < k; ++i) {
    double w = 1.0;
    for (int t = 0; t < block; ++t) {
      w /= beta;
      v(i, i * block + t) = w * norm;
    }
  }
  return v;
}

Dual build_dual(const FrameMatrix& frame, const DualSpec& spec) {
  Dual dual;
  dual.kind = spec.kind;
  const auto& e = frame.E;
  switch (spec.kind) {
    case DualKind::plain:
      dual.factor = dagger(e);
      break;
    case DualKind::decimated: {
      if (!spec.plan) throw Error(ErrorCode::invalid_argument, "decimated dual needs a plan");
      if (spec.plan->m != static_cast<int>(e.rows())) throw Error(ErrorCode::dimension_mismatch, "plan m differs from frame");
      dual.plan = spec.plan;
      const auto& p = *spec.plan;
      dual.factor = dagger(map_columns(e, p.eta, [&](const ComplexVector& col) { return decimate(col, p); }));
      break;
    }
    case DualKind::beta:
      dual.v = beta_v(static_cast<int>(e.rows()), static_cast<int>(e.cols()), spec.beta);
      dual.factor = dagger(dual.v * e);
      break;
    case DualKind::custom_v:
      if (!spec.v) throw Error(ErrorCode::invalid_argument, "custom dual needs V");
      dual.v = *spec.v;
      dual.factor = dagger(dual.v * e);
      break;
  }
  return dual;
}

ComplexVector reconstruct(const Dual& dual, std::span<const Complex> samples) {
  if (samples.size() != dual.input_length()) {
    throw Error(ErrorCode::dimension_mismatch, "dual expects " + std::to_string(dual.input_length()) +
                                                   " samples, got " + std::to_string(samples.size()));
  }
  return dual.factor * samples;
}

double BoundReport::ingredient(const std::string& name) const {
  for (const auto& [key, value] : ingredients)
    if (key == name) return value;
  throw Error(ErrorCode::invalid_argument, "no ingredient " + name);
}

BoundReport error_bound(const FrameMatrix& frame, const DecimationPlan& plan, double u_inf) {
  if (plan.variant != Variant::alternative) {
    throw Error(ErrorCode::hypothesis_violated, "closed-form bounds cover alternative decimation only");
  }
  if (static_cast<int>(frame.E.rows()) != plan.m) throw Error(ErrorCode::dimension_mismatch, "frame size differs from plan");
  const int m = plan.m, rho = plan.rho, eta = plan.eta;
  BoundReport rep;
  rep.ingredients = {{"u_inf", u_inf}, {"eta", static_cast<double>(eta)}, {"rho", static_cast<double>(rho)}};

  if (const auto* h = harmonic_of(frame); h != nullptr && plan.r == 1) {
    if (!harmonic_regime(*h)) throw Error(ErrorCode::hypothesis_violated, "frequencies outside [-k/2, k/2]");
    if (h->k > eta) throw Error(ErrorCode::hypothesis_violated, "k exceeds eta");
    const double k = h->k;
    rep.ingredients.emplace_back("k", k);
    rep.ingredients.emplace_back("C_inv_norm", inverse_norm(scaling_matrix(frame.spec, plan)));
    if (plan.divides()) {
      const bool even = m % 2 == 0 && h->k % 2 == 0 &&
                        std::none_of(h->freqs.begin(), h->freqs.end(), [](long long n) { return n == 0; });
      if (even) {
        rep.regime = "harmonic_even";
        rep.bound_value = kPi * kPi * (k + 1.0) / std::sqrt(3.0) * u_inf * k / m;
      } else {
        rep.regime = "harmonic_general";
        rep.bound_value = kPi / 2.0 * (2.0 * kPi * (k + 1.0) / std::sqrt(3.0) + 1.0) * u_inf * k / m;
      }
      return rep;
    }
    const ComplexMatrix fbar = dagger(frame.E.strided_rows(rho - 1, rho, eta));
    const double sigma = frame_variation(fbar);
    const double last = norm2(fbar.col(fbar.cols() - 1));
    rep.regime = "harmonic_subsampled";
    rep.ingredients.emplace_back("sigma_Fbar", sigma);
    rep.ingredients.emplace_back("Fbar_eta_norm", last);
    rep.bound_value = kPi / 2.0 * (sigma + last) * u_inf / rho;
    return rep;
  }

  if (plan.r > 2) throw Error(ErrorCode::hypothesis_violated, "no closed-form bound for r > 2");
  if (!plan.divides()) throw Error(ErrorCode::hypothesis_violated, "needs rho | m");
  const UgfSpec u = as_ugf(frame.spec);
  if (!ugf_regime(u, eta)) throw Error(ErrorCode::hypothesis_violated, "eigenvalues outside [-eta/2, eta/2] or C = 0");
  double c_min = std::numeric_limits<double>::infinity();
  for (const auto& c : u.base_coeffs) c_min = std::min(c_min, std::norm(c));
  double lam_max = 0.0;
  for (double l : u.eigenvalues) lam_max = std::max(lam_max, std::abs(l));
  rep.ingredients.emplace_back("C_phi0", c_min);
  rep.ingredients.emplace_back("max_abs_lambda", lam_max);

  if (plan.r == 1) {
    rep.regime = "ugf_first_order";
    rep.bound_value = kPi / (2.0 * eta * c_min) * (2.0 * kPi * lam_max + 1.0) * u_inf / rho;
    return rep;
  }
  for (double l : u.eigenvalues) {
    if (l == 0.0) throw Error(ErrorCode::hypothesis_violated, "second-order bound needs nonzero eigenvalues");
  }
  const double ratio = 2.0 * kPi * lam_max * (1.0 / eta);
  rep.regime = "ugf_second_order";
  rep.bound_value = kPi * kPi / (4.0 * eta * c_min) * (9.0 + eta * ratio * ratio) * u_inf / (double(rho) * rho);
  return rep;
}

int ceil_log2_pow(std::uint64_t x, int r) {
  if (x < 1 || r < 0) throw Error(ErrorCode::invalid_argument, "ceil_log2_pow needs x >= 1, r >= 0");
  // Compare x^r against powers of two exactly while it fits in 127 bits.
  __extension__ using U = unsigned __int128;
  U acc = 1;
  const U cap = static_cast<U>(1) << 126;
  for (int i = 0; i < r; ++i) {
    if (acc > cap / x) return static_cast<int>(std::ceil(r * std::log2(static_cast<long double>(x))));
    acc *= x;
  }
  int b = 0;
  while ((static_cast<U>(1) << b) < acc) ++b;
  return b;
}

std::int64_t bit_budget(const DecimationPlan& plan, const Alphabet& a, bool complex_mode) {
  const std::uint64_t range = plan.r == 1 ? plan.rho : plan.m;
  const int per_entry = ceil_log2_pow(2ULL * a.L * range, plan.r);
  return static_cast<std::int64_t>(plan.eta) * (complex_mode ? 2 : 1) * per_entry;
}

}  // namespace altdec
