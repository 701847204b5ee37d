#include <doctest.h>

#include <cmath>

#include "tkernel/error.hpp"
#include "tkernel/experiment.hpp"

using namespace tkernel;
using nlohmann::json;

TEST_CASE("CSV layout") {
  RiskCurve empty;
  CHECK(curve_to_csv(empty) == "n,error,log10_n,log10_error,cum_work,storage\n");
  RiskCurve c;
  c.points = {{10, 0.01, 40, 3}};
  CHECK(curve_to_csv(c) == "n,error,log10_n,log10_error,cum_work,storage\n10,0.01,1,-2,40,3\n");
}

TEST_CASE("CSV round trip is exact") {
  RiskCurve c;
  c.points = {{1, 0.1 + 0.2, 4, 1}, {17, 1.0 / 3.0, 900, 6}, {100000, 5.4321e-7, 123456789, 55}};
  const auto back = curve_from_csv(curve_to_csv(c));
  REQUIRE(back.points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.points[i].n == c.points[i].n);
    CHECK(back.points[i].error == c.points[i].error);
    CHECK(back.points[i].cum_work == c.points[i].cum_work);
    CHECK(back.points[i].storage == c.points[i].storage);
  }
  CHECK_THROWS(curve_from_csv("n,error\n1,2\n"));
}

TEST_CASE("config JSON round trip and validation") {
  const auto cfg = find_preset("example2").variants.front().second;
  const auto j = config_to_json(cfg);
  CHECK(config_to_json(config_from_json(j)) == j);
  auto bad = j;
  bad["colour"] = "red";
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = j;
  bad["theta"] = -1.0;
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = j;
  bad["d"] = 3;  // Bernoulli target needs the circle
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
}

TEST_CASE("theta defaults") {
  json j = config_to_json(ExperimentConfig{});
  j.erase("theta");
  j["s"] = 1.0;
  j["r"] = 0.75;
  CHECK(config_from_json(j).theta == doctest::Approx(0.25));
  j.erase("r");
  CHECK(config_from_json(j).theta == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("overrides") {
  const auto base = config_to_json(find_preset("example1").variants.front().second);
  auto j = base;
  apply_override(j, "theta=1/8");
  CHECK(j["theta"].get<double>() == 0.125);
  auto diff = json::diff(base, j);
  CHECK(diff.size() == 1);
  j = base;
  apply_override(j, "noise.half_width=0.3");
  CHECK(config_from_json(j).noise.half_width == 0.3);
  CHECK(json::diff(base, j).size() == 1);
  CHECK_THROWS_AS(apply_override(j, "nonsense=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(j, "theta"), ConfigError);
  CHECK(parse_override_value("1/3").get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(parse_override_value("true").get<bool>());
  CHECK(parse_override_value("ksgd").get<std::string>() == "ksgd");
}

TEST_CASE("presets") {
  CHECK(presets().size() == 6);
  for (const auto& p : presets())
    for (const auto& v : p.variants) CHECK_NOTHROW(validate(v.second));
  try {
    find_preset("example9");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("example1") != std::string::npos);
  }
  const auto& e1 = find_preset("example1").variants.front().second;
  CHECK(e1.theta == 0.25);
  CHECK(e1.noise.kind == NoiseKind::Uniform);
  CHECK(find_preset("example3").variants.size() == 3);
}

TEST_CASE("runs") {
  auto cfg = find_preset("example1").variants.front().second;
  cfg.n_max = 0;
  CHECK(run_experiment(cfg).curve.points.empty());

  cfg.n_max = 2000;
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  CHECK(curve_to_csv(a.curve) == curve_to_csv(b.curve));
  CHECK(a.curve.points.back().n == checkpoint_grid(2000).back());
  CHECK(a.final_storage == static_cast<std::uint64_t>(dim_Pi_ambient(2, a.final_level)));

  // The stored-sample engine traces the same curve.
  auto dual = cfg;
  dual.algorithm = Algorithm::TKernelDual;
  const auto c = run_experiment(dual);
  REQUIRE(c.curve.points.size() == a.curve.points.size());
  for (std::size_t i = 0; i < a.curve.points.size(); ++i)
    CHECK(c.curve.points[i].error == doctest::Approx(a.curve.points[i].error).epsilon(1e-6));

  // Exact and Monte-Carlo routes agree.
  auto mc = cfg;
  mc.risk = RiskMode::MonteCarlo;
  mc.mc_test_size = 200000;
  const auto m = run_experiment(mc);
  CHECK(m.curve.points.back().error == doctest::Approx(a.curve.points.back().error).epsilon(0.05));

  const auto j = record_to_json(a);
  CHECK(j["format"] == "tkernel-run/1");
  CHECK(j["config"] == config_to_json(cfg));

  auto sphere = find_preset("example3").variants.front().second;
  sphere.n_max = 500;
  const auto runs = run_many({cfg, sphere}, 2);
  CHECK(runs[0].config.name == cfg.name);
  CHECK(runs[1].config.d == 3);
}

TEST_CASE("baseline run counters") {
  auto cfg = find_preset("example2").variants[1].second;
  REQUIRE(cfg.algorithm == Algorithm::KernelSgdBaseline);
  cfg.n_max = 300;
  const auto r = run_experiment(cfg);
  CHECK(r.total_work == 300u * 299u / 2u);
  CHECK(r.final_storage == 300u);
}

TEST_CASE("exact and Monte-Carlo risk agree at every example1 checkpoint") {
  auto cfg = find_preset("example1").variants.front().second;
  cfg.n_max = 10000;
  const auto exact = run_experiment(cfg);
  const auto target = make_target(cfg);
  const auto set = draw_test_set(target, {cfg.seeds.test, "test"}, 100000);
  TKernelSgd est(KernelFamily::circle(cfg.s), TruncationSchedule(cfg.theta), StepSchedule(cfg.gamma0, cfg.t));
  SampleStream samples(target, cfg.noise, {cfg.seeds.train, "x"}, {cfg.seeds.noise, "noise"});
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= cfg.n_max && next < exact.curve.points.size(); ++n) {
    est.step(samples.next());
    if (n != exact.curve.points[next].n) continue;
    const auto mc = excess_risk_mc([&](std::span<const double> x) { return est.predict(x); }, set);
    INFO("n=" << n << " exact=" << exact.curve.points[next].error << " mc=" << mc.value << " se=" << mc.std_error);
    CHECK(std::abs(mc.value - exact.curve.points[next].error) <= 3.0 * mc.std_error);
    ++next;
  }
  CHECK(next == exact.curve.points.size());
}
