#pragma once

// Error-decay experiments: for every (r, rho, scheme) cell, draw signals,
// quantize their frame samples, reconstruct through the scheme's dual and
// record the worst-case error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altdec/frames.hpp"
#include "altdec/sigma_delta.hpp"

namespace altdec {

enum class Scheme { alternative, canonical, plain };

std::string_view to_string(Scheme s) noexcept;
Scheme parse_scheme(std::string_view name);

enum class FrameKind { appendix_b, harmonic, ugf };

struct FrameParams {
  std::vector<long long> freqs;     // harmonic; default centered in [-k/2, k/2]
  std::vector<double> eigenvalues;  // ugf
  ComplexVector base_coeffs;        // ugf; default 1/sqrt(k)
};

struct ExperimentConfig {
  int k = 8;
  int eta = 12;
  std::vector<int> rho_list{2, 4, 8, 16, 32};
  std::vector<int> r_list{1, 2, 3, 4, 5};
  std::vector<Scheme> schemes{Scheme::alternative, Scheme::canonical, Scheme::plain};
  int trials = 10;
  std::uint64_t seed = 20240607;
  double delta = 0.5;
  int L = 100;
  double signal_norm = 1.0;
  FrameKind frame_kind = FrameKind::appendix_b;
  FrameParams frame_params;
};

/// Throws ConfigError on any invariant violation.
void validate(const ExperimentConfig& cfg);

/// JSON object whose keys are the ExperimentConfig field names; unknown keys
/// and wrong types raise ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
std::string config_to_json(const ExperimentConfig& cfg);

/// "desk" or "appendix-b".
ExperimentConfig preset(std::string_view name);

FrameMatrix make_frame(const ExperimentConfig& cfg, int m);

struct ErrorRecord {
  Scheme scheme = Scheme::alternative;
  int r = 1;
  int rho = 1;
  int m = 1;
  int trial_count = 0;
  double max_err = 0.0;
  double mean_err = 0.0;
  double u_inf_max = 0.0;
  std::optional<double> bound_value;
  std::int64_t bits_used = 0;
  std::string status = "ok";
  double wall_ms = 0.0;
};

struct RunOptions {
  int jobs = 1;
  /// Writes wall_ms = 0 so output is byte-stable.
  bool deterministic = false;
};

/// Cells are ordered by r, then rho, then scheme as configured. Signals depend
/// only on (seed, rho, trial), so every scheme and order sees the same inputs.
std::vector<ErrorRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

inline constexpr std::string_view kRecordHeader =
    "scheme,r,rho,m,trial_count,max_err,mean_err,u_inf_max,bound_value,bits_used,status,wall_ms";

void write_records_csv(std::ostream& os, const std::vector<ErrorRecord>& records);
/// Throws ConfigError on a header or field mismatch.
std::vector<ErrorRecord> read_records_csv(std::istream& is);

struct SlopeFit {
  Scheme scheme = Scheme::alternative;
  int r = 1;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// OLS of log2(max_err) on log2(rho) per (scheme, r), using cells with status
/// ok. Throws InsufficientPoints when a group has fewer than 3 distinct rho.
std::vector<SlopeFit> fit_slopes(const std::vector<ErrorRecord>& records);

void write_slopes_csv(std::ostream& os, const std::vector<SlopeFit>& fits);

/// 17 significant digits, C locale.
std::string format_double(double v);

}  // namespace altdec
