#pragma once

// Experiment configuration, built-in presets, the streaming runner and the
// CSV / JSON outputs of the command-line harness.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tkernel/data.hpp"
#include "tkernel/eval.hpp"
#include "tkernel/kernels.hpp"
#include "tkernel/tsgd.hpp"

namespace tkernel {

enum class Algorithm { TKernelCoeff, TKernelDual, KernelSgdBaseline };
enum class RiskMode { Exact, MonteCarlo };

struct Seeds {
  std::uint64_t train = 1;
  std::uint64_t noise = 2;
  std::uint64_t test = 3;
};

struct ExperimentConfig {
  std::string name = "custom";
  int d = 2;
  KernelVariant kernel = KernelVariant::CircleBernoulli;
  double s = 1.0;
  std::optional<double> r;  // informational; sets the default theta
  double theta = 1.0 / 3.0;
  double gamma0 = 0.2;
  double t = 0.0;
  std::int64_t n_max = 100000;
  Algorithm algorithm = Algorithm::TKernelCoeff;
  Estimate estimate = Estimate::Averaged;
  std::string target = "bernoulli_b2";  // bernoulli_b2 | bernoulli_b4 | s2_poly | custom_poly
  std::optional<PolyCoeffs> custom_target;
  NoiseModel noise;
  Seeds seeds;
  int checkpoints_per_decade = 8;
  std::size_t mc_test_size = 100000;
  RiskMode risk = RiskMode::Exact;
  std::size_t sample_budget = 100000;
  int harmonic_cutoff = kDefaultHarmonicCutoff;
  bool parallel = true;
};

// Throws ConfigError on unknown keys, wrong types or inconsistent values.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
void validate(const ExperimentConfig& cfg);
TargetFunction make_target(const ExperimentConfig& cfg);

// Reads "1/3" as a fraction, otherwise any JSON literal, otherwise a string.
nlohmann::json parse_override_value(std::string_view text);
// `key=value` with a dotted key; the key must already exist in the config.
void apply_override(nlohmann::json& cfg, std::string_view assignment);

struct Preset {
  std::string name;
  std::string description;
  // (label, config); the label is empty for single-run presets.
  std::vector<std::pair<std::string, ExperimentConfig>> variants;
};

const std::vector<Preset>& presets();
// Throws ConfigError naming the valid presets.
const Preset& find_preset(std::string_view name);

struct RunRecord {
  ExperimentConfig config;
  RiskCurve curve;
  std::optional<SlopeFit> fit;
  double wall_seconds = 0.0;
  std::uint64_t total_work = 0;
  std::uint64_t final_storage = 0;
  int final_level = 0;
};

RunRecord run_experiment(const ExperimentConfig& cfg);
// Independent runs on up to `workers` threads; output order matches input.
std::vector<RunRecord> run_many(const std::vector<ExperimentConfig>& cfgs, int workers);
// Worker count from TKERNEL_WORKERS, defaulting to the OpenMP thread count.
int workers_from_env();

// CSV with header n,error,log10_n,log10_error,cum_work,storage.
std::string curve_to_csv(const RiskCurve& curve);
RiskCurve curve_from_csv(std::string_view text);
void emit_csv(const RunRecord& record, const std::string& path);

nlohmann::json record_to_json(const RunRecord& record);
void emit_record(const RunRecord& record, const std::string& path);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace tkernel
