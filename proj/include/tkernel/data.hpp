#pragma once

// Reproducible sample generation.
//
// Every stream is a xoshiro256** generator whose state is four successive
// splitmix64 outputs started at seed ^ h, h the FNV-1a hash of the stream
// label. Uniforms and normals are derived here rather than through <random>
// distributions, whose algorithms are implementation-defined.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tkernel/poly.hpp"
#include "tkernel/tsgd.hpp"

namespace tkernel {

struct RngSpec {
  std::uint64_t seed = 0;
  std::string stream;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(const RngSpec& spec);

// xoshiro256** 1.0 (Blackman and Vigna).
class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256ss(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

 private:
  std::uint64_t s_[4];
};

class RngStream {
 public:
  explicit RngStream(const RngSpec& spec);

  std::uint64_t next_u64() { return engine_(); }
  // 53-bit uniform in [0, 1).
  double uniform();
  // Standard normal, Marsaglia polar method.
  double normal();

 private:
  Xoshiro256ss engine_;
  std::optional<double> spare_;
};

std::vector<double> sample_uniform_sphere(RngStream& rng, int d);

enum class TargetKind { BernoulliB2, BernoulliB4, S2Poly, CustomPoly };

class TargetFunction {
 public:
  static TargetFunction bernoulli_b2();
  static TargetFunction bernoulli_b4();
  // sum_{k=0}^{10} (k+1)^{-3/2} sum_{|alpha|=k} x^alpha on S^2.
  static TargetFunction s2_poly();
  static TargetFunction custom(PolyCoeffs p);

  TargetKind kind() const { return kind_; }
  int dim() const { return d_; }
  // Polynomial form (S2Poly, CustomPoly); nullptr for the Bernoulli targets.
  const PolyCoeffs* polynomial() const { return poly_ ? &*poly_ : nullptr; }
  // Bernoulli order l for B_l(theta / 2 pi); 0 for polynomial targets.
  int bernoulli_order() const;

  // Cosine coefficient of cos(k theta), k >= 1 (Bernoulli targets only; the
  // constant term is zero).
  double fourier_cos(int k) const;
  // sum_{k > M} fourier_cos(k)^2 / 2, the L2 mass beyond harmonic M.
  double fourier_tail(int M) const;

 private:
  TargetFunction(TargetKind kind, int d, std::optional<PolyCoeffs> poly)
      : kind_(kind), d_(d), poly_(std::move(poly)) {}

  TargetKind kind_;
  int d_;
  std::optional<PolyCoeffs> poly_;
};

double eval_target(const TargetFunction& f, std::span<const double> x);

enum class NoiseKind { None, Uniform, Normal };

struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  double half_width = 0.0;  // Uniform on [-a, a]
  double variance = 0.0;    // Normal(0, variance)

  static NoiseModel none() { return {}; }
  static NoiseModel uniform(double a);
  static NoiseModel normal(double variance);
};

double draw_noise(const NoiseModel& model, RngStream& rng);

// Single-pass generator of (X, f*(X) + eps). X and eps use separate streams.
class SampleStream {
 public:
  SampleStream(TargetFunction target, NoiseModel noise, RngSpec x_spec, RngSpec noise_spec);

  Sample next();

  const TargetFunction& target() const { return target_; }

 private:
  TargetFunction target_;
  NoiseModel noise_;
  RngStream x_rng_;
  RngStream noise_rng_;
};

std::vector<Sample> stream_samples(const TargetFunction& target, const NoiseModel& noise, const RngSpec& x_spec,
                                   const RngSpec& noise_spec, std::int64_t n);

}  // namespace tkernel
