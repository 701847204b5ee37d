// tksgd: run, sweep and verify T-kernel SGD experiments.
//
// Exit status: 0 success, 1 configuration error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tkernel/error.hpp"
#include "tkernel/experiment.hpp"
#include "tkernel/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tkernel;

namespace {

struct Source {
  std::string config_path;
  std::string preset;
  std::string variant;
  std::vector<std::string> overrides;
};

// Base configs as JSON (one per selected variant), overrides applied.
std::vector<json> load_bases(const Source& src) {
  std::vector<json> out;
  if (!src.config_path.empty()) {
    std::ifstream f(src.config_path);
    if (!f) throw ConfigError("cannot read config file '" + src.config_path + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw ConfigError("config file '" + src.config_path + "' is not valid JSON: " + e.what());
    }
    // Round trip through the typed config so every key is present for overrides.
    out.push_back(config_to_json(config_from_json(j)));
  } else {
    const auto& p = find_preset(src.preset);
    for (const auto& [label, cfg] : p.variants)
      if (src.variant.empty() || label == src.variant) out.push_back(config_to_json(cfg));
    if (out.empty()) {
      std::string labels;
      for (const auto& v : p.variants) labels += (labels.empty() ? "" : ", ") + v.first;
      throw ConfigError("preset " + p.name + " has no variant '" + src.variant + "'; variants: " + labels);
    }
  }
  for (auto& j : out)
    for (const auto& o : src.overrides) apply_override(j, o);
  return out;
}

std::string file_stem(std::string name) {
  for (char& c : name)
    if (c == '/' || c == '\\' || c == ' ' || c == '=' || c == ',') c = '_';
  return name;
}

void write_outputs(const std::vector<RunRecord>& records, const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (const auto& r : records) {
    const auto stem = (fs::path(out_dir) / file_stem(r.config.name)).string();
    emit_csv(r, stem + ".csv");
    emit_record(r, stem + ".json");
    std::printf("%-28s n=%-8lld slope=%-10s work=%-12llu storage=%-8llu %.2fs -> %s.csv\n", r.config.name.c_str(),
                static_cast<long long>(r.config.n_max), r.fit ? format_double(r.fit->slope).substr(0, 8).c_str() : "n/a",
                static_cast<unsigned long long>(r.total_work), static_cast<unsigned long long>(r.final_storage),
                r.wall_seconds, stem.c_str());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

int cmd_run(const Source& src, const std::string& out_dir) {
  std::vector<ExperimentConfig> cfgs;
  for (const auto& j : load_bases(src)) cfgs.push_back(config_from_json(j));
  write_outputs(run_many(cfgs, cfgs.size() > 1 ? workers_from_env() : 1), out_dir);
  return 0;
}

int cmd_sweep(const Source& src, const std::vector<std::string>& vary, const std::string& out_dir) {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& v : vary) {
    const auto eq = v.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == v.size())
      throw ConfigError("--vary expects key=v1,v2,...; got '" + v + "'");
    axes.push_back({v.substr(0, eq), split(v.substr(eq + 1), ',')});
  }
  auto bases = load_bases(src);
  if (!src.preset.empty() && src.variant.empty()) bases.resize(1);

  std::vector<ExperimentConfig> cfgs;
  for (const auto& base : bases) {
    std::vector<std::size_t> idx(axes.size(), 0);
    for (;;) {
      json j = base;
      std::string suffix;
      for (std::size_t a = 0; a < axes.size(); ++a) {
        const auto& value = axes[a].second[idx[a]];
        apply_override(j, axes[a].first + "=" + value);
        suffix += "__" + axes[a].first + "_" + value;
      }
      j["name"] = j["name"].get<std::string>() + suffix;
      cfgs.push_back(config_from_json(j));
      std::size_t a = 0;
      while (a < axes.size() && ++idx[a] == axes[a].second.size()) idx[a++] = 0;
      if (a == axes.size()) break;
    }
  }
  write_outputs(run_many(cfgs, workers_from_env()), out_dir);
  return 0;
}

int cmd_verify() {
  bool all = true;
  for (const auto& c : run_property_suite()) {
    std::printf("%s  %-40s max_error=%-12.4g tolerance=%g\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.max_error, c.tolerance);
    all = all && c.passed;
  }
  return all ? 0 : 2;
}

int cmd_presets() {
  for (const auto& p : presets()) {
    std::printf("%-10s %s\n", p.name.c_str(), p.description.c_str());
    for (const auto& [label, cfg] : p.variants)
      if (!label.empty()) std::printf("           - %s (%s)\n", label.c_str(), cfg.name.c_str());
  }
  return 0;
}

void add_source_options(CLI::App* cmd, Source& src) {
  auto* cfg = cmd->add_option("--config", src.config_path, "JSON experiment config");
  auto* pre = cmd->add_option("--preset", src.preset, "built-in preset (example1 .. example6)");
  cfg->excludes(pre);
  cmd->add_option("--variant", src.variant, "run a single labelled variant of the preset")->needs(pre);
  cmd->add_option("--override", src.overrides, "key=value, dotted keys for nested fields");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-kernel SGD experiments on spheres"};
  app.require_subcommand(1);

  Source src;
  std::string out_dir = ".";
  std::vector<std::string> vary;

  auto* run = app.add_subcommand("run", "run one config or every variant of a preset");
  add_source_options(run, src);
  run->add_option("--out-dir", out_dir, "directory for <name>.csv and <name>.json");

  auto* sweep = app.add_subcommand("sweep", "cartesian product over listed values");
  add_source_options(sweep, src);
  sweep->add_option("--vary", vary, "key=v1,v2,... (repeatable)")->required();
  sweep->add_option("--out-dir", out_dir, "directory for the outputs");

  auto* verify = app.add_subcommand("verify", "run the property suite");
  auto* list = app.add_subcommand("presets", "list built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if ((run->parsed() || sweep->parsed()) && src.config_path.empty() && src.preset.empty())
      throw ConfigError("one of --config or --preset is required");
    if (run->parsed()) return cmd_run(src, out_dir);
    if (sweep->parsed()) return cmd_sweep(src, vary, out_dir);
    if (verify->parsed()) return cmd_verify();
    if (list->parsed()) return cmd_presets();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
