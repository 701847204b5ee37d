#include "tkernel/baseline.hpp"

#include <string>

#include "tkernel/error.hpp"
#include "tkernel/kernels.hpp"
#include "tkernel/poly.hpp"

namespace tkernel {

KernelSgd::KernelSgd(int s, std::size_t budget) : s_(s), budget_(budget) {
  if (s != 1 && s != 2) throw UnsupportedClosedForm("kernel SGD baseline needs s in {1, 2}");
}

double KernelSgd::kernel(double angle_a, double angle_b) const {
  return 1.0 + eval_circle_closed_form(s_, angle_a - angle_b);
}

void KernelSgd::step(double angle, double y, double gamma) {
  if (angles_.size() >= budget_)
    throw BudgetExceeded("kernel SGD budget of " + std::to_string(budget_) + " samples exhausted");
  double g = 0.0;
  for (std::size_t i = 0; i < angles_.size(); ++i) g += coef_[i] * kernel(angles_[i], angle);
  kernel_evals_ += angles_.size();
  angles_.push_back(angle);
  coef_.push_back(gamma * (y - g));
}

void KernelSgd::step(const Sample& sample, double gamma) {
  if (sample.x.size() != 2) throw DimensionMismatch("kernel SGD baseline works on S^1 only");
  require_unit(sample.x);
  step(circle_angle(sample.x[0], sample.x[1]), sample.y, gamma);
}

std::vector<double> KernelSgd::averaged_coefficients() const {
  const auto n = static_cast<double>(angles_.size());
  std::vector<double> out(coef_.size());
  for (std::size_t i = 0; i < coef_.size(); ++i) out[i] = coef_[i] * (n - static_cast<double>(i)) / (n + 1.0);
  return out;
}

double KernelSgd::predict(double angle, Estimate which) const {
  const auto n = static_cast<double>(angles_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    const double w = which == Estimate::Last ? 1.0 : (n - static_cast<double>(i)) / (n + 1.0);
    sum += w * coef_[i] * kernel(angles_[i], angle);
  }
  return sum;
}

double KernelSgd::predict(std::span<const double> x, Estimate which) const {
  if (x.size() != 2) throw DimensionMismatch("kernel SGD baseline works on S^1 only");
  return predict(circle_angle(x[0], x[1]), which);
}

double ksgd_step_decay(double s, double r) { return 1.0 - 2.0 * s / (4.0 * s * r + 1.0); }

}  // namespace tkernel
