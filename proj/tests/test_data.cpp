#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tkernel/data.hpp"
#include "tkernel/error.hpp"

using namespace tkernel;

TEST_CASE("generator seeding") {
  // First splitmix64 output from state 0 in the reference implementation.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  Xoshiro256ss g(7);
  Xoshiro256ss h(7);
  Xoshiro256ss k(8);
  bool differs = false;
  for (int i = 0; i < 16; ++i) {
    const auto v = g();
    CHECK(v == h());
    differs = differs || v != k();
  }
  CHECK(differs);
}

TEST_CASE("streams are reproducible and independent") {
  RngStream a({42, "x"});
  RngStream b({42, "x"});
  RngStream c({42, "noise"});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    differs = differs || va != c.next_u64();
  }
  CHECK(differs);
}

TEST_CASE("sphere sampler") {
  RngStream rng({1, "sphere"});
  for (int i = 0; i < 10000; ++i) {
    const auto x = sample_uniform_sphere(rng, 3);
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    CHECK(std::abs(std::sqrt(n2) - 1.0) <= 1e-12);
  }
  double m1 = 0.0;
  double m2 = 0.0;
  const int N = 100000;
  for (int i = 0; i < N; ++i) {
    const auto x = sample_uniform_sphere(rng, 2);
    m1 += x[0];
    m2 += x[0] * x[0];
  }
  CHECK(std::abs(m1 / N) <= 0.02);
  CHECK(std::abs(m2 / N - 0.5) <= 0.01);
  CHECK_THROWS(sample_uniform_sphere(rng, 1));
}

TEST_CASE("targets") {
  const double e1[2] = {1.0, 0.0};
  const double m1[2] = {-1.0, 0.0};
  CHECK(eval_target(TargetFunction::bernoulli_b2(), e1) == doctest::Approx(1.0 / 6.0));
  CHECK(eval_target(TargetFunction::bernoulli_b4(), m1) == doctest::Approx(7.0 / 240.0));
  const double x3[3] = {1.0, 0.0, 0.0};
  CHECK(eval_target(TargetFunction::s2_poly(), x3) == doctest::Approx(2.022746).epsilon(1e-6));
  CHECK_THROWS_AS(eval_target(TargetFunction::s2_poly(), e1), DimensionMismatch);
  CHECK(TargetFunction::bernoulli_b2().bernoulli_order() == 2);
  CHECK(TargetFunction::s2_poly().bernoulli_order() == 0);
  CHECK(TargetFunction::s2_poly().polynomial()->degree() == 10);
}

TEST_CASE("Bernoulli Fourier coefficients") {
  // B2(theta/2pi) = sum_k cos(k theta)/(pi^2 k^2)
  const auto b2 = TargetFunction::bernoulli_b2();
  for (double th : {0.0, 0.5, 2.0, 4.0}) {
    double sum = 0.0;
    for (int k = 1; k <= 20000; ++k) sum += b2.fourier_cos(k) * std::cos(k * th);
    const double x[2] = {std::cos(th), std::sin(th)};
    CHECK(std::abs(sum - eval_target(b2, x)) <= 1e-4);
  }
  // Parseval: ||B2||^2 = 1/180, ||B4||^2 = 1/2100.
  CHECK(b2.fourier_tail(0) == doctest::Approx(1.0 / 180.0).epsilon(1e-10));
  CHECK(TargetFunction::bernoulli_b4().fourier_tail(0) == doctest::Approx(1.0 / 2100.0).epsilon(1e-10));
  double direct = 0.0;
  for (int k = 101; k <= 2000000; ++k) direct += 0.5 * b2.fourier_cos(k) * b2.fourier_cos(k);
  CHECK(b2.fourier_tail(100) == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("noise models") {
  RngStream rng({3, "noise"});
  CHECK(draw_noise(NoiseModel::none(), rng) == 0.0);
  const int N = 100000;
  double sum = 0.0;
  bool inside = true;
  for (int i = 0; i < N; ++i) {
    const double e = draw_noise(NoiseModel::uniform(0.2), rng);
    inside = inside && e >= -0.2 && e <= 0.2;
    sum += e;
  }
  CHECK(inside);
  CHECK(std::abs(sum / N) <= 0.005);
  double s1 = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const double e = draw_noise(NoiseModel::normal(0.5), rng);
    s1 += e;
    s2 += e * e;
  }
  const double var = (s2 - s1 * s1 / N) / (N - 1);
  CHECK(var >= 0.48);
  CHECK(var <= 0.52);
  CHECK_THROWS(NoiseModel::normal(-1.0));
  CHECK_THROWS(NoiseModel::uniform(-0.1));
}

TEST_CASE("sample streams") {
  const auto target = TargetFunction::bernoulli_b2();
  SampleStream a(target, NoiseModel::none(), {1, "x"}, {1, "noise"});
  for (int i = 0; i < 10; ++i) {
    const auto s = a.next();
    CHECK(s.y == doctest::Approx(eval_target(target, s.x)));
  }
  // Constant custom target, no noise: y == c.
  const auto c = TargetFunction::custom(PolyCoeffs(3, 0, {0.7}));
  for (const auto& s : stream_samples(c, NoiseModel::none(), {2, "x"}, {2, "noise"}, 20)) CHECK(s.y == 0.7);
  // Changing the noise seed leaves X untouched.
  const auto s1 = stream_samples(target, NoiseModel::normal(1.0), {5, "x"}, {6, "noise"}, 50);
  const auto s2 = stream_samples(target, NoiseModel::normal(1.0), {5, "x"}, {7, "noise"}, 50);
  bool y_differs = false;
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(s1[i].x == s2[i].x);
    y_differs = y_differs || s1[i].y != s2[i].y;
  }
  CHECK(y_differs);
}
