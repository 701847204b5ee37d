#include "tkernel/data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "tkernel/error.hpp"
#include "tkernel/kernels.hpp"

namespace tkernel {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(const RngSpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : spec.stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return spec.seed ^ h;
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  for (auto& w : s_) {
    w = splitmix64(seed);
    seed += 0x9e3779b97f4a7c15ULL;
  }
}

Xoshiro256ss::result_type Xoshiro256ss::operator()() {
  const auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

RngStream::RngStream(const RngSpec& spec) : engine_(stream_seed(spec)) {}

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RngStream::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  return u * m;
}

std::vector<double> sample_uniform_sphere(RngStream& rng, int d) {
  if (d < 2) throw std::invalid_argument("sphere dimension must be >= 2");
  std::vector<double> x(static_cast<std::size_t>(d));
  for (;;) {
    double norm2 = 0.0;
    for (auto& v : x) {
      v = rng.normal();
      norm2 += v * v;
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& v : x) v *= inv;
      return x;
    }
  }
}

// Targets

TargetFunction TargetFunction::bernoulli_b2() { return {TargetKind::BernoulliB2, 2, std::nullopt}; }
TargetFunction TargetFunction::bernoulli_b4() { return {TargetKind::BernoulliB4, 2, std::nullopt}; }

TargetFunction TargetFunction::s2_poly() {
  PolyCoeffs p(3, 10);
  const auto& basis = p.basis();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::pow(basis[i].degree + 1.0, -1.5);
  return {TargetKind::S2Poly, 3, std::move(p)};
}

TargetFunction TargetFunction::custom(PolyCoeffs p) {
  const int d = p.dim();
  return {TargetKind::CustomPoly, d, std::move(p)};
}

int TargetFunction::bernoulli_order() const {
  switch (kind_) {
    case TargetKind::BernoulliB2:
      return 2;
    case TargetKind::BernoulliB4:
      return 4;
    default:
      return 0;
  }
}

double TargetFunction::fourier_cos(int k) const {
  constexpr double pi = std::numbers::pi;
  if (k < 1) throw std::invalid_argument("fourier_cos needs k >= 1");
  const double kk = static_cast<double>(k);
  switch (kind_) {
    case TargetKind::BernoulliB2:
      return 1.0 / (pi * pi * kk * kk);
    case TargetKind::BernoulliB4:
      return -3.0 / (pi * pi * pi * pi * kk * kk * kk * kk);
    default:
      throw std::logic_error("fourier_cos is defined for Bernoulli targets only");
  }
}

double TargetFunction::fourier_tail(int M) const {
  constexpr double pi = std::numbers::pi;
  const int l = bernoulli_order();
  if (l == 0) throw std::logic_error("fourier_tail is defined for Bernoulli targets only");
  // sum_{k>M} c^2 k^{-2l} / 2: the first terms explicitly, the rest by
  // Euler-Maclaurin from a = M + 33 on.
  const double c = l == 2 ? 1.0 / (pi * pi) : 3.0 / (pi * pi * pi * pi);
  const double p = 2.0 * l;
  const int first = std::max(M, 0) + 1;
  double tail = 0.0;
  for (int k = first; k < first + 32; ++k) tail += std::pow(static_cast<double>(k), -p);
  const double a = first + 32;
  tail += std::pow(a, 1.0 - p) / (p - 1.0) + 0.5 * std::pow(a, -p) + p / 12.0 * std::pow(a, -p - 1.0) -
          p * (p + 1.0) * (p + 2.0) / 720.0 * std::pow(a, -p - 3.0);
  return 0.5 * c * c * tail;
}

double eval_target(const TargetFunction& f, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(f.dim()))
    throw DimensionMismatch("target expects dimension " + std::to_string(f.dim()) + ", got " + std::to_string(x.size()));
  if (const auto* p = f.polynomial()) return eval_poly(*p, x);
  const double u = circle_angle(x[0], x[1]) / (2.0 * std::numbers::pi);
  return bernoulli_polynomial(f.bernoulli_order(), u);
}

// Noise

NoiseModel NoiseModel::uniform(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("uniform noise half-width must be > 0");
  return {NoiseKind::Uniform, a, 0.0};
}

NoiseModel NoiseModel::normal(double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("normal noise variance must be > 0");
  return {NoiseKind::Normal, 0.0, variance};
}

double draw_noise(const NoiseModel& model, RngStream& rng) {
  switch (model.kind) {
    case NoiseKind::None:
      return 0.0;
    case NoiseKind::Uniform:
      return model.half_width * (2.0 * rng.uniform() - 1.0);
    case NoiseKind::Normal:
      return std::sqrt(model.variance) * rng.normal();
  }
  return 0.0;
}

// Streams

SampleStream::SampleStream(TargetFunction target, NoiseModel noise, RngSpec x_spec, RngSpec noise_spec)
    : target_(std::move(target)), noise_(noise), x_rng_(x_spec), noise_rng_(noise_spec) {}

Sample SampleStream::next() {
  Sample s;
  s.x = sample_uniform_sphere(x_rng_, target_.dim());
  s.y = eval_target(target_, s.x) + draw_noise(noise_, noise_rng_);
  return s;
}

std::vector<Sample> stream_samples(const TargetFunction& target, const NoiseModel& noise, const RngSpec& x_spec,
                                   const RngSpec& noise_spec, std::int64_t n) {
  SampleStream stream(target, noise, x_spec, noise_spec);
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(stream.next());
  return out;
}

}  // namespace tkernel
