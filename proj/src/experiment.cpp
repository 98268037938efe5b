#include "altdec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "altdec/bitcodec.hpp"
#include "altdec/errors.hpp"
#include "altdec/reconstruction.hpp"
#include "altdec/rng.hpp"

namespace altdec {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::config_error, what); }

std::string_view to_string(FrameKind k) {
  switch (k) {
    case FrameKind::appendix_b: return "appendix_b";
    case FrameKind::harmonic: return "harmonic";
    case FrameKind::ugf: return "ugf";
  }
  return "appendix_b";
}

FrameKind parse_frame_kind(const std::string& s) {
  if (s == "appendix_b") return FrameKind::appendix_b;
  if (s == "harmonic") return FrameKind::harmonic;
  if (s == "ugf") return FrameKind::ugf;
  config_error("unknown frame_kind '" + s + "'");
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

Complex parse_coeff(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  config_error("base_coeffs entries must be numbers or [re, im] pairs");
}

// Symmetric about zero, with the extra frequency at +k/2 when k is even.
std::vector<long long> centered_freqs(int k) {
  std::vector<long long> f;
  for (long long n = -(k - 1) / 2; static_cast<int>(f.size()) < k; ++n) f.push_back(n);
  return f;
}

struct Cell {
  int r;
  int rho;
  Scheme scheme;
};

ErrorRecord run_cell(const ExperimentConfig& cfg, const Cell& cell, bool deterministic) {
  const auto start = std::chrono::steady_clock::now();
  ErrorRecord rec;
  rec.scheme = cell.scheme;
  rec.r = cell.r;
  rec.rho = cell.rho;
  rec.m = cell.rho * cfg.eta;
  const Alphabet alphabet{cfg.L, cfg.delta, true};

  try {
    const FrameMatrix frame = make_frame(cfg, rec.m);
    DualSpec spec;
    std::optional<DecimationPlan> plan;
    if (cell.scheme == Scheme::plain) {
      spec.kind = DualKind::plain;
      rec.bits_used = static_cast<std::int64_t>(rec.m) * 2 * ceil_log2_pow(2ULL * cfg.L, 1);
    } else {
      plan = make_plan(rec.m, cell.rho, cell.r,
                       cell.scheme == Scheme::canonical ? Variant::canonical : Variant::alternative);
      spec.kind = DualKind::decimated;
      spec.plan = plan;
      rec.bits_used = payload_bits(*plan, alphabet);
    }
    const Dual dual = build_dual(frame, spec);

    double sum = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      auto rng = SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(cell.rho), static_cast<std::uint64_t>(t));
      const ComplexVector x = signal_draw(rng, cfg.k, cfg.signal_norm);
      const ComplexVector y = frame.E * x;
      const QuantizationRun run = sigma_delta(y, cell.r, alphabet);
      const ComplexVector xr = reconstruct(dual, dual.samples(run.q));
      const double err = norm2(subtract(x, xr));
      rec.max_err = std::max(rec.max_err, err);
      rec.u_inf_max = std::max(rec.u_inf_max, run.u_inf);
      sum += err;
    }
    rec.trial_count = cfg.trials;
    rec.mean_err = cfg.trials > 0 ? sum / cfg.trials : 0.0;

    if (cell.scheme == Scheme::alternative && cell.r <= 2 && cfg.trials > 0) {
      try {
        rec.bound_value = error_bound(frame, *plan, rec.u_inf_max).bound_value;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::hypothesis_violated) throw;
      }
    }
  } catch (const Error& e) {
    rec.status = std::string(to_string(e.code()));
  }
  if (!deterministic) {
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    config_error(std::string("bad ") + what + " '" + s + "'");
  }
}

long long parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    config_error(std::string("bad ") + what + " '" + s + "'");
  }
}

}  // namespace

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::alternative: return "alternative";
    case Scheme::canonical: return "canonical";
    case Scheme::plain: return "plain";
  }
  return "alternative";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "alternative") return Scheme::alternative;
  if (name == "canonical") return Scheme::canonical;
  if (name == "plain") return Scheme::plain;
  config_error("unknown scheme '" + std::string(name) + "'");
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.k < 1) config_error("k must be positive");
  if (cfg.eta < 1) config_error("eta must be positive");
  if (cfg.rho_list.empty()) config_error("rho_list must be nonempty");
  if (cfg.r_list.empty()) config_error("r_list must be nonempty");
  if (cfg.schemes.empty()) config_error("schemes must be nonempty");
  for (int rho : cfg.rho_list) {
    if (rho < 1) config_error("rho values must be positive");
    if (static_cast<long long>(rho) * cfg.eta < cfg.k) config_error("m = rho * eta must be at least k");
  }
  for (int r : cfg.r_list)
    if (r < 1) config_error("r values must be positive");
  if (cfg.trials < 0) config_error("trials must be >= 0");
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) config_error("delta must be positive");
  if (cfg.L < 1) config_error("L must be positive");
  if (!(cfg.signal_norm > 0.0) || !std::isfinite(cfg.signal_norm)) config_error("signal_norm must be positive");
  const auto& p = cfg.frame_params;
  if (cfg.frame_kind == FrameKind::harmonic && !p.freqs.empty() && p.freqs.size() != static_cast<std::size_t>(cfg.k)) {
    config_error("frame_params.freqs needs k entries");
  }
  if (cfg.frame_kind == FrameKind::ugf) {
    if (p.eigenvalues.size() != static_cast<std::size_t>(cfg.k)) config_error("frame_params.eigenvalues needs k entries");
    if (!p.base_coeffs.empty() && p.base_coeffs.size() != static_cast<std::size_t>(cfg.k)) {
      config_error("frame_params.base_coeffs needs k entries");
    }
  }
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config must be a JSON object");

  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "k") cfg.k = get_as<int>(value, "k");
    else if (key == "eta") cfg.eta = get_as<int>(value, "eta");
    else if (key == "rho_list") cfg.rho_list = get_as<std::vector<int>>(value, "rho_list");
    else if (key == "r_list") cfg.r_list = get_as<std::vector<int>>(value, "r_list");
    else if (key == "schemes") {
      cfg.schemes.clear();
      for (const auto& s : get_as<std::vector<std::string>>(value, "schemes")) cfg.schemes.push_back(parse_scheme(s));
    } else if (key == "trials") cfg.trials = get_as<int>(value, "trials");
    else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        config_error("seed must be a non-negative integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "delta") cfg.delta = get_as<double>(value, "delta");
    else if (key == "L") cfg.L = get_as<int>(value, "L");
    else if (key == "signal_norm") cfg.signal_norm = get_as<double>(value, "signal_norm");
    else if (key == "frame_kind") cfg.frame_kind = parse_frame_kind(get_as<std::string>(value, "frame_kind"));
    else if (key == "frame_params") {
      if (!value.is_object()) config_error("frame_params must be an object");
      for (const auto& [pk, pv] : value.items()) {
        if (pk == "freqs") cfg.frame_params.freqs = get_as<std::vector<long long>>(pv, "freqs");
        else if (pk == "eigenvalues") cfg.frame_params.eigenvalues = get_as<std::vector<double>>(pv, "eigenvalues");
        else if (pk == "base_coeffs") {
          if (!pv.is_array()) config_error("base_coeffs must be an array");
          cfg.frame_params.base_coeffs.clear();
          for (const auto& c : pv) cfg.frame_params.base_coeffs.push_back(parse_coeff(c));
        } else {
          config_error("unknown frame_params key '" + pk + "'");
        }
      }
    } else {
      config_error("unknown config key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["k"] = cfg.k;
  j["eta"] = cfg.eta;
  j["rho_list"] = cfg.rho_list;
  j["r_list"] = cfg.r_list;
  j["schemes"] = json::array();
  for (auto s : cfg.schemes) j["schemes"].push_back(std::string(to_string(s)));
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["delta"] = cfg.delta;
  j["L"] = cfg.L;
  j["signal_norm"] = cfg.signal_norm;
  j["frame_kind"] = std::string(to_string(cfg.frame_kind));
  json p = json::object();
  if (!cfg.frame_params.freqs.empty()) p["freqs"] = cfg.frame_params.freqs;
  if (!cfg.frame_params.eigenvalues.empty()) p["eigenvalues"] = cfg.frame_params.eigenvalues;
  if (!cfg.frame_params.base_coeffs.empty()) {
    p["base_coeffs"] = json::array();
    for (const auto& c : cfg.frame_params.base_coeffs) p["base_coeffs"].push_back({c.real(), c.imag()});
  }
  j["frame_params"] = p;
  return j.dump(2);
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig cfg;
  if (name == "desk") return cfg;
  if (name == "appendix-b") {
    cfg.k = 55;
    cfg.eta = 65;
    return cfg;
  }
  config_error("unknown preset '" + std::string(name) + "'");
}

FrameMatrix make_frame(const ExperimentConfig& cfg, int m) {
  switch (cfg.frame_kind) {
    case FrameKind::appendix_b:
      return appendix_b_frame(m, cfg.k);
    case FrameKind::harmonic: {
      HarmonicFrameSpec spec{m, cfg.k, cfg.frame_params.freqs};
      if (spec.freqs.empty()) spec.freqs = centered_freqs(cfg.k);
      return harmonic_frame(spec);
    }
    case FrameKind::ugf: {
      UgfSpec spec{m, cfg.k, cfg.frame_params.eigenvalues, cfg.frame_params.base_coeffs};
      if (spec.base_coeffs.empty()) spec.base_coeffs.assign(cfg.k, Complex(1.0 / std::sqrt(static_cast<double>(cfg.k))));
      return ugf_frame(spec);
    }
  }
  config_error("unknown frame kind");
}

std::vector<ErrorRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  validate(cfg);
  std::vector<Cell> cells;
  for (int r : cfg.r_list)
    for (int rho : cfg.rho_list)
      for (Scheme s : cfg.schemes) cells.push_back({r, rho, s});

  std::vector<ErrorRecord> out(cells.size());
  if (cfg.trials == 0) return {};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) out[i] = run_cell(cfg, cells[i], opts.deterministic);
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(cells.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_records_csv(std::ostream& os, const std::vector<ErrorRecord>& records) {
  os << kRecordHeader << '\n';
  for (const auto& r : records) {
    os << to_string(r.scheme) << ',' << r.r << ',' << r.rho << ',' << r.m << ',' << r.trial_count << ','
       << format_double(r.max_err) << ',' << format_double(r.mean_err) << ',' << format_double(r.u_inf_max) << ','
       << (r.bound_value ? format_double(*r.bound_value) : "") << ',' << r.bits_used << ',' << r.status << ','
       << format_double(r.wall_ms) << '\n';
  }
}

std::vector<ErrorRecord> read_records_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) config_error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) config_error("unexpected CSV header");
  std::vector<ErrorRecord> out;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) config_error("CSV row has " + std::to_string(f.size()) + " fields");
    ErrorRecord r;
    r.scheme = parse_scheme(f[0]);
    r.r = static_cast<int>(parse_int(f[1], "r"));
    r.rho = static_cast<int>(parse_int(f[2], "rho"));
    r.m = static_cast<int>(parse_int(f[3], "m"));
    r.trial_count = static_cast<int>(parse_int(f[4], "trial_count"));
    r.max_err = parse_double(f[5], "max_err");
    r.mean_err = parse_double(f[6], "mean_err");
    r.u_inf_max = parse_double(f[7], "u_inf_max");
    if (!f[8].empty()) r.bound_value = parse_double(f[8], "bound_value");
    r.bits_used = parse_int(f[9], "bits_used");
    r.status = f[10];
    r.wall_ms = parse_double(f[11], "wall_ms");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SlopeFit> fit_slopes(const std::vector<ErrorRecord>& records) {
  std::vector<std::pair<Scheme, int>> order;
  std::map<std::pair<Scheme, int>, std::map<int, double>> groups;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.scheme, r.r);
    if (!groups.count(key)) order.push_back(key);
    auto& g = groups[key];
    if (r.status == "ok" && r.max_err > 0.0) g[r.rho] = r.max_err;
  }
  std::vector<SlopeFit> fits;
  for (const auto& key : order) {
    const auto& pts = groups[key];
    if (pts.size() < 3) {
      throw Error(ErrorCode::insufficient_points, std::string(to_string(key.first)) + " r=" + std::to_string(key.second) +
                                                      " has " + std::to_string(pts.size()) + " usable rho values");
    }
    const double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (const auto& [rho, err] : pts) {
      sx += std::log2(static_cast<double>(rho));
      sy += std::log2(err);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [rho, err] : pts) {
      const double dx = std::log2(static_cast<double>(rho)) - mx;
      const double dy = std::log2(err) - my;
      sxx += dx * dx;
      sxy += dx * dy;
      syy += dy * dy;
    }
    SlopeFit fit;
    fit.scheme = key.first;
    fit.r = key.second;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.points = static_cast<int>(pts.size());
    fits.push_back(fit);
  }
  return fits;
}

void write_slopes_csv(std::ostream& os, const std::vector<SlopeFit>& fits) {
  os << "scheme,r,slope,intercept,r_squared,points\n";
  for (const auto& f : fits) {
    os << to_string(f.scheme) << ',' << f.r << ',' << format_double(f.slope) << ',' << format_double(f.intercept) << ','
       << format_double(f.r_squared) << ',' << f.points << '\n';
  }
}

}  // namespace altdec
