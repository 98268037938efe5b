#include "altdec/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitTol = 1e-10;

// exp(-2 pi i a / m) with the phase reduced first so large a*l stays accurate.
Complex unit_phase(long long a, int m) {
  const long long red = ((a % m) + m) % m;
  return std::polar(1.0, -kTwoPi * static_cast<double>(red) / m);
}

void check_shape(int m, int k) {
  if (m < 1 || k < 1) throw Error(ErrorCode::invalid_argument, "frame needs m >= 1 and k >= 1");
  if (k > m) throw Error(ErrorCode::invalid_argument, "k = " + std::to_string(k) + " exceeds m = " + std::to_string(m));
}

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::abs(x)); }

}  // namespace

FrameMatrix harmonic_frame(const HarmonicFrameSpec& spec) {
  check_shape(spec.m, spec.k);
  if (spec.freqs.size() != static_cast<std::size_t>(spec.k)) {
    throw Error(ErrorCode::invalid_argument, "expected k frequencies");
  }
  std::set<long long> seen(spec.freqs.begin(), spec.freqs.end());
  if (seen.size() != spec.freqs.size()) throw Error(ErrorCode::duplicate_frequencies, "frequency list repeats");

  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.k));
  ComplexMatrix e(spec.m, spec.k);
  for (int l = 1; l <= spec.m; ++l)
    for (int j = 0; j < spec.k; ++j) e(l - 1, j) = scale * unit_phase(spec.freqs[j] * l, spec.m);
  return {std::move(e), spec};
}

FrameMatrix appendix_b_frame(int m, int k) {
  check_shape(m, k);
  HarmonicFrameSpec spec{m, k, {}};
  for (int j = 0; j < k; ++j) spec.freqs.push_back(j + 1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  ComplexMatrix e(m, k);
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < k; ++j)
      e(l, j) = scale * unit_phase(static_cast<long long>(l + 1) * (j + 1), m);
  return {std::move(e), std::move(spec)};
}

FrameMatrix ugf_frame(const UgfSpec& spec) {
  check_shape(spec.m, spec.k);
  if (spec.eigenvalues.size() != static_cast<std::size_t>(spec.k) ||
      spec.base_coeffs.size() != static_cast<std::size_t>(spec.k)) {
    throw Error(ErrorCode::invalid_argument, "expected k eigenvalues and k coefficients");
  }
  double energy = 0.0;
  for (const auto& c : spec.base_coeffs) energy += std::norm(c);
  if (std::abs(energy - 1.0) > kUnitTol) {
    throw Error(ErrorCode::non_unit_base_vector, "sum |c_s|^2 = " + std::to_string(energy));
  }

  ComplexMatrix phi(spec.m, spec.k);
  for (int s = 0; s < spec.k; ++s) {
    const double lambda = spec.eigenvalues[s];
    const Complex cbar = std::conj(spec.base_coeffs[s]);
    const bool integral = is_integer(lambda);
    for (int l = 1; l <= spec.m; ++l) {
      const Complex ph = integral ? unit_phase(std::llround(lambda) * l, spec.m)
                                  : std::polar(1.0, -kTwoPi * std::fmod(lambda * l, spec.m) / spec.m);
      phi(l - 1, s) = cbar * ph;
    }
  }
  return {std::move(phi), spec};
}

UgfSpec ugf_from_generator(const ComplexMatrix& omega, std::span<const Complex> phi0, int m) {
  const auto k = omega.rows();
  if (phi0.size() != k) throw Error(ErrorCode::dimension_mismatch, "phi0 length differs from generator size");
  const double n = norm2(phi0);
  if (std::abs(n * n - 1.0) > kUnitTol) throw Error(ErrorCode::non_unit_base_vector, "||phi0||_2 != 1");

  const auto eig = hermitian_eig(omega);
  UgfSpec spec{m, static_cast<int>(k), eig.eigenvalues, ComplexVector(k)};
  for (std::size_t s = 0; s < k; ++s) {
    Complex c{};
    for (std::size_t i = 0; i < k; ++i) c += std::conj(eig.eigenvectors(i, s)) * phi0[i];
    spec.base_coeffs[s] = c;
  }
  return spec;
}

UgfSpec as_ugf(const FrameSpec& spec) {
  if (const auto* u = std::get_if<UgfSpec>(&spec)) return *u;
  const auto& h = std::get<HarmonicFrameSpec>(spec);
  UgfSpec out{h.m, h.k, {}, ComplexVector(h.k, Complex(1.0 / std::sqrt(static_cast<double>(h.k))))};
  for (auto n : h.freqs) out.eigenvalues.push_back(static_cast<double>(n));
  return out;
}

FrameSpec with_length(const FrameSpec& spec, int m) {
  return std::visit([m](auto s) -> FrameSpec {
    s.m = m;
    return s;
  }, spec);
}

std::vector<double> frame_eigenvalues(const FrameSpec& spec) { return as_ugf(spec).eigenvalues; }

int frame_length(const FrameSpec& spec) {
  return std::visit([](const auto& s) { return s.m; }, spec);
}

int frame_dimension(const FrameSpec& spec) {
  return std::visit([](const auto& s) { return s.k; }, spec);
}

double frame_variation(const ComplexMatrix& columns) {
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < columns.cols(); ++t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < columns.rows(); ++i) acc += std::norm(columns(i, t) - columns(i, t + 1));
    total += std::sqrt(acc);
  }
  return total;
}

FrameBounds frame_bounds(const ComplexMatrix& e) {
  ComplexMatrix gram = e.adjoint() * e;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = i + 1; j < gram.cols(); ++j) {
      const Complex avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
      gram(i, j) = avg;
      gram(j, i) = std::conj(avg);
    }
  const auto eig = hermitian_eig(gram);
  return {std::max(0.0, eig.eigenvalues.front()), eig.eigenvalues.back()};
}

FrameBounds frame_bounds(const FrameMatrix& frame) { return frame_bounds(frame.E); }

bool zero_sum_check(const FrameMatrix& frame) {
  ComplexVector sum(frame.E.cols(), Complex{});
  for (std::size_t l = 0; l < frame.E.rows(); ++l)
    for (std::size_t j = 0; j < frame.E.cols(); ++j) sum[j] += frame.E(l, j);
  return norm2(sum) <= 1e-9 * static_cast<double>(frame.E.rows());
}

bool harmonic_regime(const HarmonicFrameSpec& spec) {
  std::set<long long> seen(spec.freqs.begin(), spec.freqs.end());
  if (seen.size() != spec.freqs.size()) return false;
  return std::all_of(spec.freqs.begin(), spec.freqs.end(),
                     [&](long long n) { return 2 * std::llabs(n) <= spec.k; });
}

bool ugf_regime(const UgfSpec& spec, int eta) {
  for (double lambda : spec.eigenvalues) {
    if (!is_integer(lambda) || 2.0 * std::abs(lambda) > eta) return false;
  }
  return std::all_of(spec.base_coeffs.begin(), spec.base_coeffs.end(),
                     [](const Complex& c) { return std::abs(c) > 0.0; });
}

}  // namespace altdec
