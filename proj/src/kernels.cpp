#include "tkernel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "tkernel/combinatorics.hpp"
#include "tkernel/error.hpp"

namespace tkernel {

namespace {

void check_degree(int k, int max_degree) {
  if (k < 0) throw std::invalid_argument("harmonic degree must be >= 0");
  if (k > max_degree)
    throw DegreeLimitError("harmonic degree " + std::to_string(k) + " exceeds limit " + std::to_string(max_degree));
}

// Calls visit(k, K_k(t)) for k = 0..L in order.
template <class Visit>
void for_each_Kk(int d, int L, double t, Visit&& visit) {
  if (d == 2) {
    double prev = 1.0;
    double cur = t;
    visit(0, prev);
    if (L >= 1) visit(1, cur);
    for (int k = 1; k < L; ++k) {
      const double next = 2.0 * t * cur - prev;
      prev = cur;
      cur = next;
      visit(k + 1, cur);
    }
    return;
  }
  const double lambda = 0.5 * (d - 2);
  double prev = 1.0;              // C_0
  double cur = 2.0 * lambda * t;  // C_1
  visit(0, 1.0);
  if (L >= 1) visit(1, (1.0 + lambda) / lambda * cur);
  for (int k = 1; k < L; ++k) {
    const double next = (2.0 * t * (k + lambda) * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    visit(k + 1, (k + 1.0 + lambda) / lambda * cur);
  }
}

}  // namespace

KernelFamily::KernelFamily(int d, double s, KernelVariant variant) : d_(d), s_(s), variant_(variant) {
  if (d < 2) throw std::invalid_argument("kernel dimension must be >= 2");
  if (!(s > 0.5)) throw std::invalid_argument("capacity s must exceed 1/2");
  if (variant == KernelVariant::CircleBernoulli && d != 2)
    throw std::invalid_argument("the circle Bernoulli family requires d = 2");
}

double KernelFamily::weight(int k) const {
  if (k < 0) throw std::invalid_argument("weight index must be >= 0");
  if (variant_ == KernelVariant::CircleBernoulli) return k == 0 ? 1.0 : std::pow(2.0 * k, -2.0 * s_);
  return std::pow(static_cast<double>(dim_Pi_sphere(d_, k)), -2.0 * s_);
}

bool KernelFamily::has_closed_form() const {
  return variant_ == KernelVariant::CircleBernoulli && (s_ == 1.0 || s_ == 2.0);
}

InnerProduct::InnerProduct(double t) : t_(t) {
  if (!(std::abs(t) <= 1.0 + kInnerProductTolerance))
    throw InvalidSample("inner product " + std::to_string(t) + " lies outside [-1, 1]");
  t_ = std::clamp(t, -1.0, 1.0);
}

double eval_Kk(int d, int k, InnerProduct t, int max_degree) {
  if (d < 2) throw std::invalid_argument("kernel dimension must be >= 2");
  check_degree(k, max_degree);
  double out = 0.0;
  for_each_Kk(d, k, t.value(), [&](int j, double v) {
    if (j == k) out = v;
  });
  return out;
}

const std::vector<PowerTerm>& Kk_gegenbauer_coeffs(int d, int k, int max_degree) {
  if (d < 2) throw std::invalid_argument("kernel dimension must be >= 2");
  check_degree(k, max_degree);

  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<PowerTerm>> cache;
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({d, k});
  if (!inserted) return it->second;

  const double half_d = 0.5 * d;
  // c_0 = (d/2)_k 2^k / k!
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= (half_d + i) * 2.0 / (i + 1.0);
  if (d == 2 && k >= 1) c *= 0.5;

  auto& terms = it->second;
  for (int j = 0; 2 * j <= k; ++j) {
    terms.push_back({k - 2 * j, c});
    const int m = k - 2 * j;
    if (m >= 2) c *= m * (m - 1.0) / (4.0 * (j + 1.0) * (2.0 - k - half_d + j));
  }
  return terms;
}

double eval_truncated_kernel(const KernelFamily& fam, int L, InnerProduct t, int max_degree) {
  check_degree(L, max_degree);
  double sum = 0.0;
  for_each_Kk(fam.dim(), L, t.value(), [&](int k, double v) { sum += fam.weight(k) * v; });
  return sum;
}

double bernoulli_polynomial(int l, double x) {
  switch (l) {
    case 2:
      return x * x - x + 1.0 / 6.0;
    case 4:
      return x * x * x * x - 2.0 * x * x * x + x * x - 1.0 / 30.0;
    default:
      throw UnsupportedClosedForm("Bernoulli polynomial B_" + std::to_string(l) + " is not implemented");
  }
}

double circle_angle(double x1, double x2) {
  double a = std::atan2(x2, x1);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  if (a >= 2.0 * std::numbers::pi) a = 0.0;
  return a;
}

double angle_fraction(double delta) {
  const double u = delta / (2.0 * std::numbers::pi);
  double f = u - std::floor(u);
  if (f >= 1.0) f = 0.0;
  return f;
}

double eval_circle_closed_form(int s, double delta) {
  constexpr double pi = std::numbers::pi;
  const double u = angle_fraction(delta);
  switch (s) {
    case 1:
      return pi * pi / 4.0 * bernoulli_polynomial(2, u);
    case 2:
      return -(pi * pi * pi * pi) / 48.0 * bernoulli_polynomial(4, u);
    default:
      throw UnsupportedClosedForm("closed-form circle kernel needs s in {1, 2}, got " + std::to_string(s));
  }
}

}  // namespace tkernel
