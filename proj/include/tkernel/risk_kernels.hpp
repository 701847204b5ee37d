#pragma once

// Data-parallel inner loops of risk evaluation.
//
// Each kernel has a plain serial reference (namespace serial) and an
// OpenMP version (namespace omp). The OpenMP versions reduce over fixed
// blocks and combine the partial sums in block order, so their result does
// not depend on the thread count; it differs from the serial reference
// only by summation order.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "tkernel/combinatorics.hpp"

namespace tkernel {

enum class ExecPolicy { Serial, Parallel };

// Fixed points on the sphere with cached target values.
struct TestSet {
  int d = 0;
  std::vector<double> points;  // row-major, size() * d
  std::vector<double> target;

  std::size_t size() const { return target.size(); }
  std::span<const double> point(std::size_t i) const {
    return {points.data() + i * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
};

// Sums of r^2 and r^4 over the residuals r = prediction - target.
struct ResidualMoments {
  double sum_sq = 0.0;
  double sum_quartic = 0.0;
  std::size_t count = 0;
};

// Dual-form Fourier sums C_k = sum_i b_i cos(k a_i), S_k = sum_i b_i sin(k a_i).
struct TrigSums {
  std::vector<double> cos;
  std::vector<double> sin;
};

inline constexpr std::size_t kReductionBlock = 1024;

namespace serial {

template <class Predict>
ResidualMoments squared_residuals(const TestSet& set, Predict&& predict) {
  ResidualMoments m;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double r = predict(set.point(i)) - set.target[i];
    m.sum_sq += r * r;
    m.sum_quartic += r * r * r * r;
  }
  m.count = set.size();
  return m;
}

// sum_{i,j} q_i q_j moment(alpha_i + alpha_j) over the first q.size() indices.
double gram_quadratic_form(const MonomialBasis& basis, std::span<const double> q);

TrigSums trig_sums(std::span<const double> angles, std::span<const double> weights, int M);

}  // namespace serial

namespace omp {

template <class Predict>
ResidualMoments squared_residuals(const TestSet& set, Predict&& predict) {
  const std::size_t n = set.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> sq(blocks, 0.0);
  std::vector<double> qu(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s2 = 0.0;
    double s4 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double r = predict(set.point(i)) - set.target[i];
      s2 += r * r;
      s4 += r * r * r * r;
    }
    sq[static_cast<std::size_t>(b)] = s2;
    qu[static_cast<std::size_t>(b)] = s4;
  }
  ResidualMoments m;
  for (std::size_t b = 0; b < blocks; ++b) {
    m.sum_sq += sq[b];
    m.sum_quartic += qu[b];
  }
  m.count = n;
  return m;
}

double gram_quadratic_form(const MonomialBasis& basis, std::span<const double> q);

TrigSums trig_sums(std::span<const double> angles, std::span<const double> weights, int M);

}  // namespace omp

template <class Predict>
ResidualMoments squared_residuals(const TestSet& set, Predict&& predict, ExecPolicy policy) {
  return policy == ExecPolicy::Parallel ? omp::squared_residuals(set, predict)
                                        : serial::squared_residuals(set, predict);
}

double gram_quadratic_form(const MonomialBasis& basis, std::span<const double> q, ExecPolicy policy);
TrigSums trig_sums(std::span<const double> angles, std::span<const double> weights, int M, ExecPolicy policy);

// Normalised sphere moment (1/|S^{d-1}|) * integral of x^alpha.
double sphere_monomial_moment(int d, const MultiIndex& alpha);

// Factor tables with moment(alpha) = radial[|alpha|] * prod_i axis[alpha_i].
struct MomentTables {
  std::vector<double> axis;
  std::vector<double> radial;
};
MomentTables moment_tables(int d, int max_total_degree);

}  // namespace tkernel
