#pragma once

// Property checks that need no experiment run. Each reports the largest
// deviation it saw against its tolerance.

#include <cstdint>
#include <string>
#include <vector>

namespace tkernel {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
};

CheckResult check_dimension_recurrences();
CheckResult check_dimension_growth();       // dim Pi_sphere(k+1) <= 2d dim Pi_sphere(k)
CheckResult check_ambient_vs_sphere();      // dim Pi_ambient <= (1 + d/k) dim Pi_sphere^{d/(d-1)}
CheckResult check_kernel_diagonal();        // K_k(1) = dim H_k for d >= 3
CheckResult check_power_series_diagonal();  // same through the power-series coefficients
CheckResult check_kernel_norm_bound();      // K^T_L(1) <= 2s / (2s - 1)
CheckResult check_kernel_magnitude();       // |K_k(t)| <= dim H_k (<= 1 on the circle)
CheckResult check_bernoulli_series();
CheckResult check_circle_reproducing();
CheckResult check_table_contraction();
CheckResult check_averaging_identity();
CheckResult check_multinomial_identity();

std::vector<CheckResult> run_property_suite();

// Largest |Alg1 - Alg2| prediction gap over `test_points` random points
// after n steps on the given seed. d = 2 uses the circle kernel with s = 1,
// d >= 3 the general series with s = 1.
double engine_gap(int d, std::uint64_t seed, std::int64_t n, int test_points);

}  // namespace tkernel
