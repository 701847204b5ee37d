#pragma once

// Excess risk ||f - f*||^2 under the uniform law on the sphere, and
// log-log slope fits of risk curves.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tkernel/baseline.hpp"
#include "tkernel/data.hpp"
#include "tkernel/poly.hpp"
#include "tkernel/risk_kernels.hpp"

namespace tkernel {

struct Checkpoint {
  std::int64_t n = 0;
  double error = 0.0;
  std::uint64_t cum_work = 0;
  std::uint64_t storage = 0;
};

struct RiskCurve {
  std::vector<Checkpoint> points;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  double residual = 0.0;  // RMS of log10 residuals
  std::size_t count = 0;
};

// Least squares on (log10 n, log10 err) over checkpoints with n in [n_min, n_max].
SlopeFit fit_slope(const RiskCurve& curve, std::int64_t n_min, std::int64_t n_max);
// Default window: the top two decades below the last checkpoint.
SlopeFit fit_slope(const RiskCurve& curve);

// {ceil(10^{j/per_decade})} intersected with [1, n_max], deduplicated.
std::vector<std::int64_t> checkpoint_grid(std::int64_t n_max, int per_decade = 8);

struct RiskEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

TestSet draw_test_set(const TargetFunction& target, const RngSpec& spec, std::size_t size);

// Mean squared residual over a fixed Monte-Carlo test set.
template <class Predict>
RiskEstimate excess_risk_mc(Predict&& predict, const TestSet& set, ExecPolicy policy = ExecPolicy::Parallel) {
  if (set.size() == 0) throw std::invalid_argument("excess_risk_mc: empty test set");
  const auto m = squared_residuals(set, predict, policy);
  const double n = static_cast<double>(m.count);
  const double mean = m.sum_sq / n;
  const double var = n > 1 ? std::max(0.0, (m.sum_quartic - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n)};
}

// Real Fourier series a0 + sum_k (cos_k cos k theta + sin_k sin k theta).
struct FourierSeries {
  double a0 = 0.0;
  std::vector<double> cos;  // index k-1 for harmonic k
  std::vector<double> sin;

  int cutoff() const { return static_cast<int>(cos.size()); }
};

// Exact coefficients of a circle polynomial via 2L+2 equispaced samples.
FourierSeries fourier_of_poly(const PolyCoeffs& p);
// Exact coefficients of any trigonometric polynomial of degree <= L.
FourierSeries fourier_of_function(const std::function<double(double)>& f, int L);
// Coefficients up to M of the kernel-SGD iterate; exact for k <= M.
FourierSeries fourier_of_ksgd(const KernelSgd& est, Estimate which, int M, ExecPolicy policy = ExecPolicy::Parallel);

inline constexpr int kDefaultHarmonicCutoff = 1024;
inline constexpr double kDefaultTailTolerance = 1e-10;

// Parseval risk against a Bernoulli target, evaluated through harmonic M
// plus the exact target tail beyond M. Requires pred.cutoff() <= M and a
// target tail no larger than tail_tol.
double excess_risk_exact_circle(const FourierSeries& pred, const TargetFunction& target,
                                int M = kDefaultHarmonicCutoff, double tail_tol = kDefaultTailTolerance);

// ||p - q||^2 for polynomials on S^{d-1}, through the monomial moments.
double excess_risk_exact_poly(const PolyCoeffs& p, const PolyCoeffs& q, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace tkernel
