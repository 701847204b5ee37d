#include "tkernel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tkernel/combinatorics.hpp"
#include "tkernel/data.hpp"
#include "tkernel/eval.hpp"
#include "tkernel/kernels.hpp"
#include "tkernel/poly.hpp"
#include "tkernel/tsgd.hpp"

namespace tkernel {

namespace {

CheckResult result(std::string name, double max_error, double tolerance) {
  return {std::move(name), max_error <= tolerance, max_error, tolerance};
}

// Returns the excess of lhs over rhs (0 when the inequality holds).
double violation(double lhs, double rhs) { return std::max(0.0, lhs - rhs); }

}  // namespace

CheckResult check_dimension_recurrences() {
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    std::int64_t sphere = 0;
    std::int64_t ambient = 0;
    for (int k = 0; k <= 30; ++k) {
      sphere += dim_H(d, k);
      ambient += dim_P(d, k);
      // Pascal: dim P(d, k) = dim P(d - 1, k) + dim P(d, k - 1).
      const auto pascal = binomial(k + d - 2, d - 2) + dim_P_safe(d, k - 1);
      worst = std::max(worst, std::abs(static_cast<double>(dim_P(d, k) - pascal)));
      worst = std::max(worst, std::abs(static_cast<double>(dim_H(d, k) - (dim_P(d, k) - dim_P_safe(d, k - 2)))));
      worst = std::max(worst, std::abs(static_cast<double>(dim_Pi_sphere(d, k) - sphere)));
      worst = std::max(worst, std::abs(static_cast<double>(dim_Pi_sphere(d, k) - (dim_P(d, k) + dim_P_safe(d, k - 1)))));
      worst = std::max(worst, std::abs(static_cast<double>(dim_Pi_ambient(d, k) - ambient)));
    }
  }
  return result("dimension recurrences", worst, 0.0);
}

CheckResult check_dimension_growth() {
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d)
    for (int k = 0; k <= 30; ++k)
      worst = std::max(worst, violation(static_cast<double>(dim_Pi_sphere(d, k + 1)),
                                        2.0 * d * static_cast<double>(dim_Pi_sphere(d, k))));
  return result("sphere dimension growth bound", worst, 0.0);
}

CheckResult check_ambient_vs_sphere() {
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d)
    for (int k = 1; k <= 30; ++k) {
      const double bound = (1.0 + static_cast<double>(d) / k) *
                           std::pow(static_cast<double>(dim_Pi_sphere(d, k)), static_cast<double>(d) / (d - 1));
      worst = std::max(worst, violation(static_cast<double>(dim_Pi_ambient(d, k)), bound) / bound);
    }
  return result("ambient vs sphere dimension bound", worst, 0.0);
}

CheckResult check_kernel_diagonal() {
  double worst = 0.0;
  for (int d = 3; d <= 6; ++d)
    for (int k = 0; k <= 20; ++k) {
      const double target = static_cast<double>(dim_H(d, k));
      worst = std::max(worst, std::abs(eval_Kk(d, k, InnerProduct(1.0)) - target) / target);
    }
  return result("K_k(x,x) = dim H_k (relative)", worst, 1e-12);
}

CheckResult check_power_series_diagonal() {
  // The alternating power sum cancels; at d = 3, k = 20 it keeps ~10 digits.
  double worst = 0.0;
  for (int d = 3; d <= 6; ++d)
    for (int k = 0; k <= 20; ++k) {
      const double target = static_cast<double>(dim_H(d, k));
      double series = 0.0;
      for (const auto& term : Kk_gegenbauer_coeffs(d, k)) series += term.coeff;
      worst = std::max(worst, std::abs(series - target) / target);
    }
  return result("power-series K_k(1) = dim H_k (relative)", worst, 1e-9);
}

CheckResult check_kernel_norm_bound() {
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d)
    for (double s : {0.75, 1.0, 1.5, 2.0}) {
      const auto fam = KernelFamily::general(d, s);
      const double bound = 2.0 * s / (2.0 * s - 1.0);
      for (int L = 0; L <= 20; ++L)
        worst = std::max(worst, violation(eval_truncated_kernel(fam, L, InnerProduct(1.0)), bound));
    }
  return result("truncated kernel norm bound 2s/(2s-1)", worst, 0.0);
}

CheckResult check_kernel_magnitude() {
  RngStream rng({7, "kernel-magnitude"});
  double worst = 0.0;
  for (int d = 2; d <= 5; ++d)
    for (int pair = 0; pair < 1000; ++pair) {
      const auto x = sample_uniform_sphere(rng, d);
      const auto y = sample_uniform_sphere(rng, d);
      double t = 0.0;
      for (int i = 0; i < d; ++i) t += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
      for (int k = 0; k <= 20; ++k) {
        const double cap = d == 2 ? 1.0 : static_cast<double>(dim_H(d, k));
        worst = std::max(worst, violation(std::abs(eval_Kk(d, k, InnerProduct(t))), cap * (1.0 + 1e-12)));
      }
    }
  return result("|K_k| <= dim H_k", worst, 0.0);
}

CheckResult check_bernoulli_series() {
  RngStream rng({11, "bernoulli-series"});
  double worst = 0.0;
  for (int s : {1, 2}) {
    const long K = s == 1 ? 1000000 : 1000;
    for (int i = 0; i < 200; ++i) {
      const double delta = 2.0 * std::numbers::pi * (2.0 * rng.uniform() - 1.0);
      // cos(k delta) by rotation, re-anchored every 1024 terms.
      const double c1 = std::cos(delta);
      const double s1 = std::sin(delta);
      double c = c1;
      double sn = s1;
      double sum = 0.0;
      for (long k = 1; k <= K; ++k) {
        if (k % 1024 == 0) {
          c = std::cos(static_cast<double>(k) * delta);
          sn = std::sin(static_cast<double>(k) * delta);
        }
        sum += std::pow(2.0 * static_cast<double>(k), -2.0 * s) * c;
        const double cn = c * c1 - sn * s1;
        sn = sn * c1 + c * s1;
        c = cn;
      }
      worst = std::max(worst, std::abs(eval_circle_closed_form(s, delta) - sum));
    }
  }
  return result("Bernoulli closed form vs series", worst, 1e-6);
}

CheckResult check_circle_reproducing() {
  // <f, g>_K = f0 g0 / w0 + sum_k (fc_k gc_k + fs_k gs_k) / w_k for the
  // basis cos k theta, sin k theta; g = K^T_L(x, .) from the coefficient table.
  RngStream rng({13, "reproducing"});
  double worst = 0.0;
  for (double s : {1.0, 2.0}) {
    const auto fam = KernelFamily::circle(s);
    for (int L = 1; L <= 8; ++L) {
      const auto tbl = KernelCoeffTable::build(fam, L);
      for (int trial = 0; trial < 10; ++trial) {
        const auto x = sample_uniform_sphere(rng, 2);
        const double theta = circle_angle(x[0], x[1]);
        const auto g = fourier_of_poly(tbl.slice_at(x));
        for (int m = 0; m <= L; ++m) {
          const double cos_part = m == 0 ? g.a0 / fam.weight(0) : g.cos[static_cast<std::size_t>(m - 1)] / fam.weight(m);
          worst = std::max(worst, std::abs(cos_part - std::cos(m * theta)));
          if (m > 0) {
            const double sin_part = g.sin[static_cast<std::size_t>(m - 1)] / fam.weight(m);
            worst = std::max(worst, std::abs(sin_part - std::sin(m * theta)));
          }
        }
      }
    }
  }
  return result("reproducing property on S^1", worst, 1e-10);
}

CheckResult check_table_contraction() {
  RngStream rng({17, "contraction"});
  double worst = 0.0;
  for (int d = 2; d <= 4; ++d)
    for (double s : {1.0, 2.0})
      for (auto variant : {KernelVariant::GeneralSeries, KernelVariant::CircleBernoulli}) {
        if (variant == KernelVariant::CircleBernoulli && d != 2) continue;
        const KernelFamily fam(d, s, variant);
        KernelCoeffTable tbl(fam);
        for (int L = 0; L <= 10; ++L) {
          if (L > 0) tbl.increment();
          const double expect = eval_truncated_kernel(fam, L, InnerProduct(1.0));
          std::vector<double> mono(tbl.size());
          for (int trial = 0; trial < 5; ++trial) {
            const auto x = sample_uniform_sphere(rng, d);
            tbl.basis().monomials(x, mono);
            double sum = 0.0;
            for (std::size_t i = 0; i < mono.size(); ++i) sum += tbl.values()[i] * mono[i] * mono[i];
            worst = std::max(worst, std::abs(sum - expect));
          }
        }
      }
  return result("kernel table contraction", worst, 1e-9);
}

CheckResult check_averaging_identity() {
  double worst = 0.0;
  for (int d : {2, 3}) {
    const auto fam = d == 2 ? KernelFamily::circle(1.0) : KernelFamily::general(3, 1.0);
    const auto target = d == 2 ? TargetFunction::bernoulli_b2() : TargetFunction::s2_poly();
    TKernelSgd est(fam, TruncationSchedule(0.5), StepSchedule(0.3, 0.25));
    SampleStream samples(target, NoiseModel::normal(0.25), {19, "x"}, {19, "noise"});
    std::vector<PolyCoeffs> history{PolyCoeffs(d, 0)};
    for (int n = 1; n <= 500; ++n) {
      est.step(samples.next());
      history.push_back(est.fhat());
    }
    PolyCoeffs mean(d, est.level());
    for (const auto& f : history) mean.axpy(1.0, f);
    const double scale = 1.0 / static_cast<double>(history.size());
    for (std::size_t i = 0; i < mean.size(); ++i) worst = std::max(worst, std::abs(mean[i] * scale - est.fbar()[i]));
  }
  return result("Polyak averaging identity", worst, 1e-10);
}

CheckResult check_multinomial_identity() {
  RngStream rng({23, "multinomial"});
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    const auto basis = shared_basis(d, 12);
    std::vector<double> mono(basis->size());
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = sample_uniform_sphere(rng, d);
      basis->monomials(x, mono);
      for (int m = 0; m <= 12; ++m) {
        const auto coeffs = inner_power_expansion(d, m);
        const std::size_t off = basis->offset(m);
        double sum = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) sum += coeffs[i] * mono[off + i] * mono[off + i];
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
  }
  return result("multinomial sphere identity", worst, 1e-12);
}

std::vector<CheckResult> run_property_suite() {
  return {check_dimension_recurrences(), check_dimension_growth(),  check_ambient_vs_sphere(),
          check_kernel_diagonal(),       check_power_series_diagonal(), check_kernel_norm_bound(), check_kernel_magnitude(),
          check_bernoulli_series(),      check_circle_reproducing(), check_table_contraction(),
          check_averaging_identity(),    check_multinomial_identity()};
}

double engine_gap(int d, std::uint64_t seed, std::int64_t n, int test_points) {
  const auto fam = d == 2 ? KernelFamily::circle(1.0) : KernelFamily::general(d, 1.0);
  const auto target = d == 2   ? TargetFunction::bernoulli_b2()
                      : d == 3 ? TargetFunction::s2_poly()
                               : TargetFunction::custom(PolyCoeffs(d, 2, std::vector<double>(
                                                                              static_cast<std::size_t>(dim_Pi_ambient(d, 2)), 1.0)));
  const TruncationSchedule trunc(0.5);
  const StepSchedule step(d == 2 ? 0.2 : 0.5, d == 2 ? 0.0 : 1.0 / 3.0);
  TKernelSgd coeff(fam, trunc, step);
  TKernelSgdReference dual(fam, trunc, step);
  SampleStream samples(target, NoiseModel::normal(0.5), {seed, "x"}, {seed, "noise"});
  for (std::int64_t i = 0; i < n; ++i) {
    const auto s = samples.next();
    coeff.step(s);
    dual.step(s);
  }
  RngStream rng({seed, "engine-test"});
  double gap = 0.0;
  for (int i = 0; i < test_points; ++i) {
    const auto x = sample_uniform_sphere(rng, d);
    for (auto which : {Estimate::Last, Estimate::Averaged})
      gap = std::max(gap, std::abs(coeff.predict(x, which) - dual.predict(x, which)));
  }
  return gap;
}

}  // namespace tkernel
