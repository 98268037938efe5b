// Command-line harness: experiment runs, identity verification, the sample
// codec and slope fitting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "altdec/bitcodec.hpp"
#include "altdec/decimation.hpp"
#include "altdec/errors.hpp"
#include "altdec/experiment.hpp"
#include "altdec/verify.hpp"

namespace {

using namespace altdec;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitVerify = 2;
constexpr int kExitConfig = 3;

std::string slurp(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw Error(ErrorCode::config_error, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes to the file, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& data, bool binary = false) {
  if (path.empty() || path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error(ErrorCode::config_error, "cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

struct RunArgs {
  std::string config;
  std::string out;
  std::string preset;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool deterministic = false;
};

int cmd_run(const RunArgs& a) {
  ExperimentConfig cfg = preset("desk");
  if (!a.preset.empty()) cfg = preset(a.preset);
  if (!a.config.empty()) cfg = parse_config(slurp(a.config));
  if (a.seed) cfg.seed = *a.seed;
  validate(cfg);
  if (a.jobs < 1) throw Error(ErrorCode::config_error, "--jobs must be >= 1");
  const auto records = run_experiment(cfg, {a.jobs, a.deterministic});
  std::ostringstream os;
  write_records_csv(os, records);
  emit(a.out, os.str());
  return kExitOk;
}

int cmd_verify(int max_m, const std::string& out) {
  const VerifyReport rep = verify_all(max_m);
  for (const auto& r : rep.rows) {
    std::fprintf(stderr, "%-40s %6d  max_dev=%-12.3g tol=%-8.1g %s\n", r.name.c_str(), r.grid_size, r.max_deviation,
                 r.tolerance, r.pass ? "PASS" : "FAIL");
  }
  if (!out.empty()) emit(out, rep.to_json() + "\n");
  return rep.all_pass() ? kExitOk : kExitVerify;
}

// Block description shared by encode input and decode output:
//   {"m", "rho", "r", "L", "delta", "complex", "values": [[re, im], ...]}
// Encode also accepts "q" (length m quantized samples) instead of "values".
int cmd_encode(const std::string& in, const std::string& out) {
  json j;
  try {
    j = json::parse(slurp(in));
    const DecimationPlan plan = make_plan(j.at("m").get<int>(), j.at("rho").get<int>(), j.value("r", 1));
    Alphabet alpha{j.value("L", 100), j.value("delta", 0.5), j.value("complex", true)};
    auto read_vec = [](const json& arr) {
      ComplexVector v;
      for (const auto& e : arr) {
        if (e.is_number()) v.emplace_back(e.get<double>(), 0.0);
        else v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      }
      return v;
    };
    ComplexVector values = j.contains("values") ? read_vec(j.at("values")) : decimate(read_vec(j.at("q")), plan);
    const auto bytes = encode(values, plan, alpha);
    emit(out, std::string(bytes.begin(), bytes.end()), true);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config_error, std::string("encode input: ") + e.what());
  }
  return kExitOk;
}

int cmd_decode(const std::string& in, const std::string& out) {
  const std::string raw = slurp(in, true);
  const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
  const DecodedBlock block = decode(bytes);
  json j{{"m", block.plan.m},
         {"rho", block.plan.rho},
         {"r", block.plan.r},
         {"L", block.alphabet.L},
         {"delta", block.alphabet.delta},
         {"complex", block.alphabet.complex_mode}};
  j["values"] = json::array();
  for (const auto& z : block.values) j["values"].push_back({z.real(), z.imag()});
  emit(out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_slopes(const std::string& in, const std::string& out) {
  std::istringstream is(slurp(in));
  const auto fits = fit_slopes(read_records_csv(is));
  std::ostringstream os;
  write_slopes_csv(os, fits);
  emit(out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternative-decimation sigma-delta harness"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the error-decay experiment and write CSV records");
  run_cmd->add_option("--config", run.config, "JSON config file");
  run_cmd->add_option("--out", run.out, "Output CSV (stdout if omitted)");
  run_cmd->add_option("--preset", run.preset, "Named config")->check(CLI::IsMember({"desk", "appendix-b"}));
  run_cmd->add_option("--seed", run.seed, "Override the seed");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads");
  run_cmd->add_flag("--deterministic", run.deterministic, "Write wall_ms = 0 for byte-stable output");

  int max_m = 24;
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Check the operator identities over all m <= max-m");
  verify_cmd->add_option("--max-m", max_m, "Largest m in the grid")->check(CLI::Range(1, 200));
  verify_cmd->add_option("--out", verify_out, "JSON report path");

  std::string codec_in, codec_out;
  auto* enc_cmd = app.add_subcommand("encode", "JSON block to bitstream");
  enc_cmd->add_option("--in", codec_in, "JSON input")->required();
  enc_cmd->add_option("--out", codec_out, "Binary output (stdout if omitted)");
  auto* dec_cmd = app.add_subcommand("decode", "Bitstream to JSON block");
  dec_cmd->add_option("--in", codec_in, "Binary input")->required();
  dec_cmd->add_option("--out", codec_out, "JSON output (stdout if omitted)");

  std::string slopes_in, slopes_out;
  auto* slopes_cmd = app.add_subcommand("slopes", "Fit log2 error against log2 rho");
  slopes_cmd->add_option("--in", slopes_in, "Records CSV")->required();
  slopes_cmd->add_option("--out", slopes_out, "Slopes CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(max_m, verify_out);
    if (*enc_cmd) return cmd_encode(codec_in, codec_out);
    if (*dec_cmd) return cmd_decode(codec_in, codec_out);
    if (*slopes_cmd) return cmd_slopes(slopes_in, slopes_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::config_error ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
