#include "tkernel/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "tkernel/baseline.hpp"
#include "tkernel/error.hpp"
#include "tkernel/tsgd.hpp"

namespace tkernel {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::TKernelCoeff: return "tkernel_alg2";
    case Algorithm::TKernelDual: return "tkernel_alg1";
    case Algorithm::KernelSgdBaseline: return "ksgd";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "tkernel_alg2") return Algorithm::TKernelCoeff;
  if (s == "tkernel_alg1") return Algorithm::TKernelDual;
  if (s == "ksgd") return Algorithm::KernelSgdBaseline;
  throw ConfigError("unknown algorithm '" + s + "' (expected tkernel_alg2, tkernel_alg1 or ksgd)");
}

const char* noise_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::None: return "none";
    case NoiseKind::Uniform: return "uniform";
    case NoiseKind::Normal: return "normal";
  }
  return "?";
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

const std::set<std::string> kTopKeys = {
    "name",  "d",      "kernel",  "s",         "r",     "theta",     "gamma0",
    "t",     "n_max",  "algorithm", "estimate", "target", "noise",  "seeds",
    "checkpoints_per_decade", "mc_test_size", "risk", "sample_budget", "harmonic_cutoff", "parallel"};

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  check_keys(j, kTopKeys, "config");
  ExperimentConfig c;
  c.name = get_or<std::string>(j, "name", c.name);
  c.d = get_or<int>(j, "d", c.d);
  const auto kernel = get_or<std::string>(j, "kernel", "circle");
  if (kernel == "circle")
    c.kernel = KernelVariant::CircleBernoulli;
  else if (kernel == "general")
    c.kernel = KernelVariant::GeneralSeries;
  else
    throw ConfigError("unknown kernel '" + kernel + "' (expected circle or general)");
  c.s = get_or<double>(j, "s", c.s);
  if (j.contains("r") && !j.at("r").is_null()) c.r = get_or<double>(j, "r", 0.0);
  if (j.contains("theta"))
    c.theta = get_or<double>(j, "theta", c.theta);
  else
    c.theta = c.r ? 1.0 / (4.0 * c.s * *c.r + 1.0) : 1.0 / (2.0 * c.s + 1.0);
  c.gamma0 = get_or<double>(j, "gamma0", c.gamma0);
  c.t = get_or<double>(j, "t", c.t);
  c.n_max = get_or<std::int64_t>(j, "n_max", c.n_max);
  c.algorithm = parse_algorithm(get_or<std::string>(j, "algorithm", "tkernel_alg2"));
  const auto est = get_or<std::string>(j, "estimate", "averaged");
  if (est == "averaged")
    c.estimate = Estimate::Averaged;
  else if (est == "last")
    c.estimate = Estimate::Last;
  else
    throw ConfigError("unknown estimate '" + est + "' (expected averaged or last)");

  if (j.contains("target")) {
    const auto& t = j.at("target");
    if (t.is_string()) {
      c.target = t.get<std::string>();
    } else if (t.is_object()) {
      check_keys(t, {"kind", "d", "degree", "coeffs"}, "target");
      c.target = get_or<std::string>(t, "kind", "custom_poly");
      if (c.target != "custom_poly") throw ConfigError("object targets must have kind custom_poly");
      const int td = get_or<int>(t, "d", c.d);
      const int deg = get_or<int>(t, "degree", 0);
      auto coeffs = get_or<std::vector<double>>(t, "coeffs", {});
      try {
        c.custom_target = PolyCoeffs(td, deg, std::move(coeffs));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("custom target: ") + e.what());
      }
    } else {
      throw ConfigError("target must be a name or a custom_poly object");
    }
  }

  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    check_keys(n, {"kind", "half_width", "variance"}, "noise");
    const auto kind = get_or<std::string>(n, "kind", "none");
    if (kind == "none")
      c.noise = NoiseModel::none();
    else if (kind == "uniform")
      c.noise = NoiseModel::uniform(get_or<double>(n, "half_width", 0.0));
    else if (kind == "normal")
      c.noise = NoiseModel::normal(get_or<double>(n, "variance", 0.0));
    else
      throw ConfigError("unknown noise kind '" + kind + "' (expected none, uniform or normal)");
  }
  if (j.contains("seeds")) {
    const auto& s = j.at("seeds");
    check_keys(s, {"train", "noise", "test"}, "seeds");
    c.seeds.train = get_or<std::uint64_t>(s, "train", c.seeds.train);
    c.seeds.noise = get_or<std::uint64_t>(s, "noise", c.seeds.noise);
    c.seeds.test = get_or<std::uint64_t>(s, "test", c.seeds.test);
  }
  c.checkpoints_per_decade = get_or<int>(j, "checkpoints_per_decade", c.checkpoints_per_decade);
  c.mc_test_size = get_or<std::size_t>(j, "mc_test_size", c.mc_test_size);
  const auto risk = get_or<std::string>(j, "risk", "exact");
  if (risk == "exact")
    c.risk = RiskMode::Exact;
  else if (risk == "mc")
    c.risk = RiskMode::MonteCarlo;
  else
    throw ConfigError("unknown risk mode '" + risk + "' (expected exact or mc)");
  c.sample_budget = get_or<std::size_t>(j, "sample_budget", c.sample_budget);
  c.harmonic_cutoff = get_or<int>(j, "harmonic_cutoff", c.harmonic_cutoff);
  c.parallel = get_or<bool>(j, "parallel", c.parallel);
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["d"] = c.d;
  j["kernel"] = c.kernel == KernelVariant::CircleBernoulli ? "circle" : "general";
  j["s"] = c.s;
  j["r"] = c.r ? json(*c.r) : json(nullptr);
  j["theta"] = c.theta;
  j["gamma0"] = c.gamma0;
  j["t"] = c.t;
  j["n_max"] = c.n_max;
  j["algorithm"] = algorithm_name(c.algorithm);
  j["estimate"] = c.estimate == Estimate::Averaged ? "averaged" : "last";
  if (c.custom_target) {
    const auto coeffs = c.custom_target->coeffs();
    j["target"] = {{"kind", "custom_poly"},
                   {"d", c.custom_target->dim()},
                   {"degree", c.custom_target->degree()},
                   {"coeffs", std::vector<double>(coeffs.begin(), coeffs.end())}};
  } else {
    j["target"] = c.target;
  }
  j["noise"] = {{"kind", noise_name(c.noise.kind)}, {"half_width", c.noise.half_width}, {"variance", c.noise.variance}};
  j["seeds"] = {{"train", c.seeds.train}, {"noise", c.seeds.noise}, {"test", c.seeds.test}};
  j["checkpoints_per_decade"] = c.checkpoints_per_decade;
  j["mc_test_size"] = c.mc_test_size;
  j["risk"] = c.risk == RiskMode::Exact ? "exact" : "mc";
  j["sample_budget"] = c.sample_budget;
  j["harmonic_cutoff"] = c.harmonic_cutoff;
  j["parallel"] = c.parallel;
  return j;
}

TargetFunction make_target(const ExperimentConfig& c) {
  if (c.target == "bernoulli_b2") return TargetFunction::bernoulli_b2();
  if (c.target == "bernoulli_b4") return TargetFunction::bernoulli_b4();
  if (c.target == "s2_poly") return TargetFunction::s2_poly();
  if (c.target == "custom_poly") {
    if (!c.custom_target) throw ConfigError("target custom_poly needs d, degree and coeffs");
    return TargetFunction::custom(*c.custom_target);
  }
  throw ConfigError("unknown target '" + c.target + "' (expected bernoulli_b2, bernoulli_b4, s2_poly or custom_poly)");
}

void validate(const ExperimentConfig& c) {
  if (c.d < 2) throw ConfigError("d must be >= 2");
  if (c.kernel == KernelVariant::CircleBernoulli && c.d != 2) throw ConfigError("the circle kernel needs d = 2");
  if (!(c.s > 0.5)) throw ConfigError("s must exceed 1/2");
  if (c.r && !(*c.r > 0.0)) throw ConfigError("r must be positive");
  if (!(c.theta > 0.0 && c.theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  if (!(c.gamma0 > 0.0)) throw ConfigError("gamma0 must be positive");
  if (!(c.t >= 0.0 && c.t < 1.0)) throw ConfigError("t must lie in [0, 1)");
  if (c.n_max < 0) throw ConfigError("n_max must be >= 0");
  if (c.checkpoints_per_decade < 1) throw ConfigError("checkpoints_per_decade must be >= 1");
  if (c.mc_test_size < 1) throw ConfigError("mc_test_size must be >= 1");
  if (c.harmonic_cutoff < 1) throw ConfigError("harmonic_cutoff must be >= 1");
  if (c.noise.kind == NoiseKind::Uniform && !(c.noise.half_width >= 0.0))
    throw ConfigError("uniform noise needs half_width >= 0");
  if (c.noise.kind == NoiseKind::Normal && !(c.noise.variance >= 0.0))
    throw ConfigError("normal noise needs variance >= 0");
  const auto target = make_target(c);
  if (target.dim() != c.d)
    throw ConfigError("target '" + c.target + "' lives on d = " + std::to_string(target.dim()) +
                      ", config has d = " + std::to_string(c.d));
  if (c.algorithm == Algorithm::KernelSgdBaseline) {
    if (c.kernel != KernelVariant::CircleBernoulli) throw ConfigError("ksgd needs the circle kernel");
    if (c.s != 1.0 && c.s != 2.0) throw ConfigError("ksgd has closed forms for s = 1 and s = 2 only");
  }
}

json parse_override_value(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    double num = 0.0;
    double den = 0.0;
    const auto a = text.substr(0, slash);
    const auto b = text.substr(slash + 1);
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), num);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), den);
    if (ra.ec == std::errc() && ra.ptr == a.data() + a.size() && rb.ec == std::errc() &&
        rb.ptr == b.data() + b.size() && den != 0.0)
      return num / den;
  }
  const auto parsed = json::parse(text.begin(), text.end(), nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  return std::string(text);
}

void apply_override(json& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("override must look like key=value");
  const std::string key(assignment.substr(0, eq));
  json* node = &cfg;
  std::string_view rest = key;
  for (;;) {
    const auto dot = rest.find('.');
    const std::string part(rest.substr(0, dot));
    if (!node->is_object() || !node->contains(part)) throw ConfigError("unknown config key '" + key + "'");
    node = &(*node)[part];
    if (dot == std::string_view::npos) break;
    rest = rest.substr(dot + 1);
  }
  *node = parse_override_value(assignment.substr(eq + 1));
}

namespace {

ExperimentConfig base_circle(const std::string& name, double s, double r) {
  ExperimentConfig c;
  c.name = name;
  c.d = 2;
  c.kernel = KernelVariant::CircleBernoulli;
  c.s = s;
  c.r = r;
  c.theta = 1.0 / (4.0 * s * r + 1.0);
  c.gamma0 = 0.2;
  c.t = 0.0;
  c.n_max = 100000;
  return c;
}

ExperimentConfig base_sphere(const std::string& name, double theta, double t, NoiseModel noise) {
  ExperimentConfig c;
  c.name = name;
  c.d = 3;
  c.kernel = KernelVariant::GeneralSeries;
  c.s = 1.0;
  c.theta = theta;
  c.gamma0 = 0.5;
  c.t = t;
  c.n_max = 100000;
  c.target = "s2_poly";
  c.noise = noise;
  return c;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;
  {
    auto c = base_circle("example1", 1.0, 0.75);
    c.target = "bernoulli_b2";
    c.noise = NoiseModel::uniform(0.2);
    out.push_back({"example1", "S^1, s=1, r=3/4, B2 target, U[-0.2,0.2] noise, L_n = n^(1/4), constant step",
                   {{"", c}}});
  }
  {
    Preset p{"example2", "S^1, B4 target, N(0,0.5) noise: T-kernel (L_n = n^(1/8)) vs kernel SGD with s=1 and s=2",
             {}};
    auto tk = base_circle("example2_tkernel", 1.0, 1.75);
    tk.target = "bernoulli_b4";
    tk.noise = NoiseModel::normal(0.5);
    p.variants.push_back({"tkernel", tk});
    auto k1 = tk;
    k1.name = "example2_ksgd_s1";
    k1.algorithm = Algorithm::KernelSgdBaseline;
    k1.t = ksgd_step_decay(1.0, 1.75);
    k1.n_max = 30000;
    p.variants.push_back({"ksgd_s1", k1});
    auto k2 = k1;
    k2.name = "example2_ksgd_s2";
    k2.s = 2.0;
    k2.r = 0.875;
    k2.theta = 1.0 / (4.0 * 2.0 * 0.875 + 1.0);
    k2.t = ksgd_step_decay(2.0, 0.875);
    k2.n_max = 100000;
    p.variants.push_back({"ksgd_s2", k2});
    out.push_back(std::move(p));
  }
  {
    Preset p{"example3", "S^2, gamma_n = 0.5 n^(-1/3), N(0,1) noise, L_n = n^0.1, n^(1/3), n^0.45", {}};
    const std::pair<const char*, double> thetas[] = {{"theta_0.1", 0.1}, {"theta_1/3", 1.0 / 3.0}, {"theta_0.45", 0.45}};
    for (const auto& [label, th] : thetas) {
      std::string stem = label;
      std::replace(stem.begin(), stem.end(), '/', '_');
      p.variants.push_back({label, base_sphere("example3_" + stem, th, 1.0 / 3.0, NoiseModel::normal(1.0))});
    }
    out.push_back(std::move(p));
  }
  struct StepFamily {
    const char* name;
    const char* description;
    double theta;
    NoiseModel noise;
    std::vector<std::pair<const char*, double>> ts;
  };
  const StepFamily families[] = {
      {"example4", "S^2, L_n = n^(1/3), U[-0.3,0.3] noise, t in {0, 1/3, 1/2}", 1.0 / 3.0, NoiseModel::uniform(0.3),
       {{"t_0", 0.0}, {"t_1/3", 1.0 / 3.0}, {"t_1/2", 0.5}}},
      {"example5", "S^2, L_n = n^0.4, N(0,1) noise, t in {0, 1/6, 1/3}", 0.4, NoiseModel::normal(1.0),
       {{"t_0", 0.0}, {"t_1/6", 1.0 / 6.0}, {"t_1/3", 1.0 / 3.0}}},
      {"example6", "S^2, L_n = n^0.5, N(0,1) noise, t in {0, 1/4, 1/3}", 0.5, NoiseModel::normal(1.0),
       {{"t_0", 0.0}, {"t_1/4", 0.25}, {"t_1/3", 1.0 / 3.0}}},
  };
  for (const auto& f : families) {
    Preset p{f.name, f.description, {}};
    for (const auto& [label, t] : f.ts) {
      std::string stem = label;
      std::replace(stem.begin(), stem.end(), '/', '_');
      p.variants.push_back({label, base_sphere(std::string(f.name) + "_" + stem, f.theta, t, f.noise)});
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  std::string valid;
  for (const auto& p : presets()) valid += (valid.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

namespace {

// Risk of the current iterate, by the cheapest exact route the pair
// (engine, target) admits, else Monte Carlo on the fixed test set.
class RiskEvaluator {
 public:
  RiskEvaluator(const ExperimentConfig& cfg, const TargetFunction& target)
      : cfg_(cfg), target_(target), policy_(cfg.parallel ? ExecPolicy::Parallel : ExecPolicy::Serial) {}

  bool circle_exact() const { return cfg_.risk == RiskMode::Exact && target_.bernoulli_order() != 0; }
  bool poly_exact() const { return cfg_.risk == RiskMode::Exact && target_.polynomial() != nullptr; }

  double operator()(const TKernelSgd& est) {
    const auto& f = est.estimate(cfg_.estimate);
    if (circle_exact()) return excess_risk_exact_circle(fourier_of_poly(f), target_, cfg_.harmonic_cutoff);
    if (poly_exact()) return excess_risk_exact_poly(f, *target_.polynomial(), policy_);
    return mc([&](std::span<const double> x) { return eval_poly(f, x); });
  }

  double operator()(const TKernelSgdReference& est) {
    if (circle_exact()) {
      const auto fs = fourier_of_function(
          [&](double a) {
            const double x[2] = {std::cos(a), std::sin(a)};
            return est.predict(x, cfg_.estimate);
          },
          est.level());
      return excess_risk_exact_circle(fs, target_, cfg_.harmonic_cutoff);
    }
    return mc([&](std::span<const double> x) { return est.predict(x, cfg_.estimate); });
  }

  double operator()(const KernelSgd& est) {
    if (circle_exact())
      return excess_risk_exact_circle(fourier_of_ksgd(est, cfg_.estimate, cfg_.harmonic_cutoff, policy_), target_,
                                      cfg_.harmonic_cutoff);
    return mc([&](std::span<const double> x) { return est.predict(x, cfg_.estimate); });
  }

 private:
  template <class F>
  double mc(F&& f) {
    if (!test_) test_ = draw_test_set(target_, {cfg_.seeds.test, "test"}, cfg_.mc_test_size);
    return excess_risk_mc(f, *test_, policy_).value;
  }

  const ExperimentConfig& cfg_;
  const TargetFunction& target_;
  ExecPolicy policy_;
  std::optional<TestSet> test_;
};

template <class Engine, class Step, class Counters>
void stream_through(const ExperimentConfig& cfg, SampleStream& samples, Engine& est, Step&& step,
                    Counters&& counters, RiskEvaluator& risk, RunRecord& rec) {
  const auto grid = checkpoint_grid(cfg.n_max, cfg.checkpoints_per_decade);
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
    step(est, samples.next(), n);
    if (next < grid.size() && grid[next] == n) {
      const auto [work, storage] = counters(est);
      rec.curve.points.push_back({n, risk(est), work, storage});
      ++next;
    }
  }
  const auto [work, storage] = counters(est);
  rec.total_work = work;
  rec.final_storage = storage;
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg;
  const auto target = make_target(cfg);
  SampleStream samples(target, cfg.noise, {cfg.seeds.train, "x"}, {cfg.seeds.noise, "noise"});
  RiskEvaluator risk(cfg, target);
  const KernelFamily fam(cfg.d, cfg.s, cfg.kernel);
  const TruncationSchedule trunc(cfg.theta);
  const StepSchedule sched(cfg.gamma0, cfg.t);

  switch (cfg.algorithm) {
    case Algorithm::TKernelCoeff: {
      TKernelSgd est(fam, trunc, sched);
      stream_through(
          cfg, samples, est, [](TKernelSgd& e, const Sample& s, std::int64_t) { e.step(s); },
          [](const TKernelSgd& e) { return std::pair{e.counters().updates, e.counters().storage}; }, risk, rec);
      rec.final_level = est.level();
      break;
    }
    case Algorithm::TKernelDual: {
      TKernelSgdReference est(fam, trunc, sched, cfg.sample_budget);
      stream_through(
          cfg, samples, est, [](TKernelSgdReference& e, const Sample& s, std::int64_t) { e.step(s); },
          [](const TKernelSgdReference& e) { return std::pair{e.counters().updates, e.counters().storage}; }, risk,
          rec);
      rec.final_level = est.level();
      break;
    }
    case Algorithm::KernelSgdBaseline: {
      KernelSgd est(static_cast<int>(cfg.s), cfg.sample_budget);
      stream_through(
          cfg, samples, est, [&](KernelSgd& e, const Sample& s, std::int64_t n) { e.step(s, sched.at(n)); },
          [](const KernelSgd& e) {
            return std::pair{e.kernel_evaluations(), static_cast<std::uint64_t>(e.iterations())};
          },
          risk, rec);
      break;
    }
  }

  if (rec.curve.points.size() >= 2) {
    const auto top = rec.curve.points.back().n;
    const auto lo = std::max<std::int64_t>(1, top / 100);
    std::size_t in_range = 0;
    for (const auto& p : rec.curve.points) in_range += p.n >= lo;
    if (in_range >= 2) rec.fit = fit_slope(rec.curve, lo, top);
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

int workers_from_env() {
  if (const char* v = std::getenv("TKERNEL_WORKERS")) {
    int w = 0;
    const std::string_view s(v);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), w);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || w < 1)
      throw ConfigError("TKERNEL_WORKERS must be a positive integer");
    return w;
  }
  return std::max(1, omp_get_max_threads());
}

std::vector<RunRecord> run_many(const std::vector<ExperimentConfig>& cfgs, int workers) {
  std::vector<RunRecord> out(cfgs.size());
  std::vector<std::exception_ptr> errors(cfgs.size());
  workers = std::max(1, workers);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cfgs.size()); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = run_experiment(cfgs[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string curve_to_csv(const RiskCurve& curve) {
  std::string out = "n,error,log10_n,log10_error,cum_work,storage\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.n);
    out += ',' + format_double(p.error);
    out += ',' + format_double(std::log10(static_cast<double>(p.n)));
    out += ',' + format_double(std::log10(p.error));
    out += ',' + std::to_string(p.cum_work);
    out += ',' + std::to_string(p.storage);
    out += '\n';
  }
  return out;
}

RiskCurve curve_from_csv(std::string_view text) {
  RiskCurve curve;
  std::size_t pos = 0;
  std::size_t row = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (row++ == 0) {
      if (line != "n,error,log10_n,log10_error,cum_work,storage") throw std::runtime_error("unexpected CSV header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::size_t c = 0;
    for (;;) {
      const auto comma = line.find(',', c);
      cells.push_back(line.substr(c, comma == std::string_view::npos ? std::string_view::npos : comma - c));
      if (comma == std::string_view::npos) break;
      c = comma + 1;
    }
    if (cells.size() != 6) throw std::runtime_error("CSV row " + std::to_string(row) + ": expected 6 fields");
    Checkpoint p;
    auto parse = [&](std::string_view cell, auto& v) {
      const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (r.ec != std::errc() || r.ptr != cell.data() + cell.size())
        throw std::runtime_error("CSV row " + std::to_string(row) + ": bad field '" + std::string(cell) + "'");
    };
    parse(cells[0], p.n);
    parse(cells[1], p.error);
    parse(cells[4], p.cum_work);
    parse(cells[5], p.storage);
    curve.points.push_back(p);
  }
  if (row == 0) throw std::runtime_error("CSV is missing its header");
  return curve;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

void emit_csv(const RunRecord& record, const std::string& path) { write_file(path, curve_to_csv(record.curve)); }

json record_to_json(const RunRecord& r) {
  json j;
  j["format"] = "tkernel-run/1";
  j["config"] = config_to_json(r.config);
  json pts = json::array();
  for (const auto& p : r.curve.points)
    pts.push_back({{"n", p.n}, {"error", p.error}, {"cum_work", p.cum_work}, {"storage", p.storage}});
  j["curve"] = std::move(pts);
  if (r.fit)
    j["fit"] = {{"slope", r.fit->slope},   {"intercept", r.fit->intercept}, {"n_min", r.fit->n_min},
                {"n_max", r.fit->n_max},   {"residual", r.fit->residual},   {"count", r.fit->count}};
  else
    j["fit"] = nullptr;
  j["wall_seconds"] = r.wall_seconds;
  j["counters"] = {{"total_work", r.total_work}, {"final_storage", r.final_storage}, {"final_level", r.final_level}};
  return j;
}

void emit_record(const RunRecord& record, const std::string& path) {
  write_file(path, record_to_json(record).dump(2) + "\n");
}

}  // namespace tkernel
