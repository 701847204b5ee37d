#include <doctest.h>

#include <cmath>

#include "tkernel/baseline.hpp"
#include "tkernel/data.hpp"
#include "tkernel/error.hpp"

using namespace tkernel;

TEST_CASE("kernel is 1 plus the closed form") {
  KernelSgd k1(1);
  CHECK(k1.kernel(0.3, 0.3) == doctest::Approx(1.0 + std::pow(std::acos(-1.0), 2) / 24.0));
  KernelSgd k2(2);
  CHECK(k2.kernel(1.0, 0.2) == doctest::Approx(1.0 + eval_circle_closed_form(2, 0.8)));
  CHECK_THROWS_AS(KernelSgd(3), UnsupportedClosedForm);
}

TEST_CASE("first step and empty predictions") {
  KernelSgd est(1);
  CHECK(est.predict(0.4) == 0.0);
  est.step(1.0, 2.0, 0.2);
  CHECK(est.predict(1.0, Estimate::Last) == doctest::Approx(0.4 * est.kernel(1.0, 1.0)));
  CHECK(est.predict(2.5, Estimate::Averaged) == doctest::Approx(0.2 * est.kernel(1.0, 2.5)));
}

TEST_CASE("step decay exponent") {
  CHECK(ksgd_step_decay(1.0, 1.75) == doctest::Approx(0.75));
  CHECK(ksgd_step_decay(2.0, 0.875) == doctest::Approx(0.5));
}

TEST_CASE("averaged predictor equals the offline average of iterates") {
  KernelSgd est(2);
  SampleStream samples(TargetFunction::bernoulli_b4(), NoiseModel::normal(0.5), {1, "x"}, {1, "noise"});
  const StepSchedule sched(0.2, 0.5);
  const double probe[3] = {0.1, 2.0, 4.4};
  std::vector<std::vector<double>> iterates{{0.0, 0.0, 0.0}};
  for (std::int64_t n = 1; n <= 300; ++n) {
    est.step(samples.next(), sched.at(n));
    std::vector<double> v;
    for (double a : probe) v.push_back(est.predict(a, Estimate::Last));
    iterates.push_back(v);
  }
  for (std::size_t j = 0; j < 3; ++j) {
    double mean = 0.0;
    for (const auto& it : iterates) mean += it[j];
    mean /= static_cast<double>(iterates.size());
    CHECK(std::abs(mean - est.predict(probe[j], Estimate::Averaged)) <= 1e-10);
  }
  const auto avg = est.averaged_coefficients();
  const auto raw = est.coefficients();
  for (std::size_t i = 0; i < raw.size(); ++i)
    CHECK(avg[i] == doctest::Approx(raw[i] * static_cast<double>(300 - i) / 301.0));
}

TEST_CASE("kernel evaluation count is n(n-1)/2") {
  KernelSgd est(1);
  SampleStream samples(TargetFunction::bernoulli_b2(), NoiseModel::none(), {2, "x"}, {2, "noise"});
  for (std::int64_t n = 1; n <= 500; ++n) {
    est.step(samples.next(), 0.2);
    CHECK(est.kernel_evaluations() == static_cast<std::uint64_t>(n * (n - 1) / 2));
  }
}

TEST_CASE("budget") {
  KernelSgd est(1, 3);
  for (int i = 0; i < 3; ++i) est.step(0.1 * i, 0.0, 0.1);
  CHECK_THROWS_AS(est.step(1.0, 0.0, 0.1), BudgetExceeded);
}
