#include "altdec/sigma_delta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

double quantize_component(double v, const Alphabet& a) {
  const double j = std::floor(v / a.delta);
  const double clamped = std::clamp(j, static_cast<double>(-a.L), static_cast<double>(a.L - 1));
  return a.level(static_cast<int>(clamped));
}

std::vector<double> signed_binomials(int r) {
  // coefficient of u_{n-l} in s_n: (-1)^{l+1} C(r, l)
  std::vector<double> w(r + 1, 0.0);
  double c = 1.0;
  for (int l = 1; l <= r; ++l) {
    c = c * (r - l + 1) / l;
    w[l] = (l % 2 == 1) ? c : -c;
  }
  return w;
}

}  // namespace

void validate(const Alphabet& a) {
  if (a.L < 1) throw Error(ErrorCode::invalid_argument, "alphabet needs L >= 1");
  if (!(a.delta > 0.0) || !std::isfinite(a.delta)) throw Error(ErrorCode::invalid_argument, "alphabet needs delta > 0");
}

Complex round_off(Complex v, const Alphabet& a) {
  const double re = quantize_component(v.real(), a);
  if (!a.complex_mode) return {re, 0.0};
  return {re, quantize_component(v.imag(), a)};
}

QuantizationRun sigma_delta(std::span<const Complex> y, int r, const Alphabet& a) {
  validate(a);
  if (r < 1) throw Error(ErrorCode::invalid_argument, "order must be >= 1");
  if (y.size() < static_cast<std::size_t>(r)) {
    throw Error(ErrorCode::order_exceeds_length,
                "m = " + std::to_string(y.size()) + " < r = " + std::to_string(r));
  }
  if (!a.complex_mode) {
    for (const auto& v : y)
      if (v.imag() != 0.0) throw Error(ErrorCode::invalid_argument, "real alphabet given complex samples");
  }

  const auto w = signed_binomials(r);
  const std::size_t m = y.size();
  QuantizationRun run{ComplexVector(y.begin(), y.end()), ComplexVector(m), ComplexVector(m), r, 0.0, false};
  const double limit = a.range();
  for (std::size_t n = 0; n < m; ++n) {
    Complex s{};
    for (int l = 1; l <= r && static_cast<std::size_t>(l) <= n; ++l) s += w[l] * run.u[n - l];
    const Complex arg = s + y[n];
    if (std::abs(arg.real()) > limit || std::abs(arg.imag()) > limit) run.overloaded = true;
    run.q[n] = round_off(arg, a);
    run.u[n] = arg - run.q[n];
  }
  run.u_inf = norm_inf(run.u);
  return run;
}

ComplexVector backward_difference(std::span<const Complex> v, int times) {
  ComplexVector out(v.begin(), v.end());
  for (int t = 0; t < times; ++t) {
    for (std::size_t n = out.size(); n-- > 1;) out[n] -= out[n - 1];
  }
  return out;
}

double residual_check(const QuantizationRun& run) {
  const auto du = backward_difference(run.u, run.order);
  double worst = 0.0;
  for (std::size_t n = 0; n < run.y.size(); ++n) worst = std::max(worst, std::abs((run.y[n] - run.q[n]) - du[n]));
  return worst;
}

double parity_endpoint(const QuantizationRun& run, const FrameMatrix& frame) {
  if (run.order != 1) throw Error(ErrorCode::hypothesis_violated, "parity endpoint needs a first-order run");
  if (run.u.size() != frame.E.rows()) throw Error(ErrorCode::dimension_mismatch, "run length differs from frame size");
  if (!zero_sum_check(frame)) throw Error(ErrorCode::hypothesis_violated, "frame fails the zero-sum condition");
  const Complex last = run.u.back();
  return std::max(std::abs(last.real()), std::abs(last.imag()));
}

}  // namespace altdec
