#include "tkernel/tsgd.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <utility>

#include "tkernel/combinatorics.hpp"
#include "tkernel/error.hpp"

namespace tkernel {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TruncationSchedule::TruncationSchedule(double theta_) : theta(theta_) {
  if (!(theta > 0.0)) throw std::invalid_argument("truncation parameter theta must be > 0");
}

StepSchedule::StepSchedule(double gamma0_, double t_) : gamma0(gamma0_), t(t_) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("step decay exponent t must be >= 0");
}

double StepSchedule::at(std::int64_t n) const { return t == 0.0 ? gamma0 : gamma0 * std::pow(static_cast<double>(n), -t); }

double step_size(const StepSchedule& sched, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("step index must be >= 1");
  return sched.at(n);
}

int truncation_level(double theta, std::int64_t n, int d) {
  if (n < 1) throw std::invalid_argument("truncation_level needs n >= 1");
  // Relative slack so that exact powers (16^{1/4} = 2) are not pushed over
  // a threshold by rounding in pow.
  const double target = std::pow(static_cast<double>(n), theta) * (1.0 - 1e-12);
  int k = 0;
  while (static_cast<double>(dim_Pi_sphere(d, k)) < target) ++k;
  return k;
}

// Coefficient engine

TKernelSgd::TKernelSgd(KernelFamily fam, TruncationSchedule trunc, StepSchedule step, int max_degree)
    : trunc_(trunc), step_(step), table_(fam, max_degree), fhat_(fam.dim(), 0), fbar_(fam.dim(), 0) {
  counters_.storage = fhat_.size();
}

void TKernelSgd::raise_level(int L) {
  while (table_.level() < L) table_.increment();
  fhat_.grow(L);
  fbar_.grow(L);
}

void TKernelSgd::step(const Sample& sample) {
  if (sample.x.size() != static_cast<std::size_t>(family().dim()))
    throw DimensionMismatch("sample dimension does not match the kernel family");
  require_unit(sample.x);

  const std::int64_t n = n_ + 1;
  raise_level(truncation_level(trunc_.theta, n, family().dim()));

  const std::size_t size = fhat_.size();
  scratch_.resize(size);
  table_.basis().monomials(sample.x, scratch_);

  const double residual = sample.y - dot(fhat_.coeffs(), scratch_);
  const double scale = step_.at(n) * residual;
  const auto tbl = table_.values();
  auto fh = fhat_.coeffs();
  auto fb = fbar_.coeffs();
  const double avg = 1.0 / static_cast<double>(n + 1);
  for (std::size_t i = 0; i < size; ++i) {
    fh[i] += scale * tbl[i] * scratch_[i];
    fb[i] += (fh[i] - fb[i]) * avg;
  }

  n_ = n;
  counters_.updates += size;
  counters_.storage = size;
}

double TKernelSgd::predict(std::span<const double> x, Estimate which) const {
  if (n_ == 0) return 0.0;
  return eval_poly(estimate(which), x);
}

TKernelSgd TKernelSgd::restore(KernelFamily fam, TruncationSchedule trunc, StepSchedule step, std::int64_t n,
                               int level, std::vector<double> fhat, std::vector<double> fbar,
                               WorkCounters counters, int max_degree) {
  TKernelSgd est(fam, trunc, step, max_degree);
  est.raise_level(level);
  est.fhat_ = PolyCoeffs(fam.dim(), level, std::move(fhat));
  est.fbar_ = PolyCoeffs(fam.dim(), level, std::move(fbar));
  est.n_ = n;
  est.counters_ = counters;
  return est;
}

// Stored-sample engine

TKernelSgdReference::TKernelSgdReference(KernelFamily fam, TruncationSchedule trunc, StepSchedule step,
                                         std::size_t budget, int max_degree)
    : fam_(fam), trunc_(trunc), step_(step), budget_(budget), max_degree_(max_degree) {}

void TKernelSgdReference::step(const Sample& sample) {
  if (sample.x.size() != static_cast<std::size_t>(fam_.dim()))
    throw DimensionMismatch("sample dimension does not match the kernel family");
  require_unit(sample.x);
  if (points_.size() >= budget_)
    throw BudgetExceeded("stored-sample engine budget of " + std::to_string(budget_) + " samples exhausted");
  if (points_.size() >= kQuadraticWarning && !warned_) {
    std::cerr << "warning: stored-sample T-kernel engine past " << kQuadraticWarning
              << " samples; cost grows quadratically\n";
    warned_ = true;
  }

  const std::int64_t n = iterations() + 1;
  const int L = truncation_level(trunc_.theta, n, fam_.dim());

  double prediction = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    prediction += coef_[i] * eval_truncated_kernel(fam_, levels_[i], InnerProduct(dot(points_[i], sample.x)), max_degree_);
  counters_.updates += points_.size();

  points_.push_back(sample.x);
  levels_.push_back(L);
  coef_.push_back(step_.at(n) * (sample.y - prediction));
  coef_bar_.push_back(0.0);

  const double avg = 1.0 / static_cast<double>(n + 1);
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_bar_[i] += (coef_[i] - coef_bar_[i]) * avg;
  counters_.storage = points_.size();
}

double TKernelSgdReference::predict(std::span<const double> x, Estimate which) const {
  if (x.size() != static_cast<std::size_t>(fam_.dim()))
    throw DimensionMismatch("point dimension does not match the kernel family");
  const auto& a = which == Estimate::Last ? coef_ : coef_bar_;
  double sum = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    sum += a[i] * eval_truncated_kernel(fam_, levels_[i], InnerProduct(dot(points_[i], x)), max_degree_);
  return sum;
}

}  // namespace tkernel
