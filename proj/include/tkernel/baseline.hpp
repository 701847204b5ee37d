#pragma once

// Classical kernel SGD on the circle with the untruncated Bernoulli kernel
//   K(x, x') = 1 + sum_{k>=1} (2k)^{-2s} cos(k (theta - phi)),  s in {1, 2}.
// The iterate g_n = sum_i a_i K(X_i, .) is kept in dual form; the Polyak
// average uses a_i (n + 1 - i) / (n + 1), since a_i enters every g_k with
// k >= i.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tkernel/tsgd.hpp"

namespace tkernel {

class KernelSgd {
 public:
  static constexpr std::size_t kDefaultBudget = 100000;

  explicit KernelSgd(int s, std::size_t budget = kDefaultBudget);

  int s() const { return s_; }
  double kernel(double angle_a, double angle_b) const;

  void step(double angle, double y, double gamma);
  void step(const Sample& sample, double gamma);

  double predict(double angle, Estimate which = Estimate::Averaged) const;
  double predict(std::span<const double> x, Estimate which = Estimate::Averaged) const;

  std::int64_t iterations() const { return static_cast<std::int64_t>(angles_.size()); }
  std::uint64_t kernel_evaluations() const { return kernel_evals_; }
  std::span<const double> angles() const { return angles_; }
  std::span<const double> coefficients() const { return coef_; }
  std::vector<double> averaged_coefficients() const;

 private:
  int s_;
  std::size_t budget_;
  std::vector<double> angles_;
  std::vector<double> coef_;
  std::uint64_t kernel_evals_ = 0;
};

// gamma_n exponent t in gamma0 * n^{-t} with t = 1 - 2s / (4 s r + 1).
double ksgd_step_decay(double s, double r);

}  // namespace tkernel
