#include "tkernel/risk_kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tkernel/error.hpp"

namespace tkernel {

MomentTables moment_tables(int d, int max_total_degree) {
  // axis[e]   = Gamma((e+1)/2) / sqrt(pi) for even e, 0 for odd e
  // radial[m] = Gamma(d/2) / Gamma((m+d)/2)
  MomentTables t;
  t.axis.assign(static_cast<std::size_t>(max_total_degree) + 1, 0.0);
  t.radial.assign(static_cast<std::size_t>(max_total_degree) + 1, 0.0);
  double g = 1.0;
  for (int e = 0; e <= max_total_degree; e += 2) {
    t.axis[static_cast<std::size_t>(e)] = g;  // (1/2)(3/2)...((e-1)/2)
    g *= (e + 1) / 2.0;
  }
  // Gamma((m+d)/2) / Gamma(d/2) only matters for even m (odd m has an odd axis).
  double r = 1.0;
  for (int m = 0; m <= max_total_degree; m += 2) {
    t.radial[static_cast<std::size_t>(m)] = 1.0 / r;
    r *= (m + d) / 2.0;
  }
  return t;
}

double sphere_monomial_moment(int d, const MultiIndex& alpha) {
  if (alpha.dim() != d) throw DimensionMismatch("multi-index length differs from the sphere dimension");
  for (int a : alpha.exponents)
    if (a % 2 != 0) return 0.0;
  const auto t = moment_tables(d, alpha.degree);
  double m = t.radial[static_cast<std::size_t>(alpha.degree)];
  for (int a : alpha.exponents) m *= t.axis[static_cast<std::size_t>(a)];
  return m;
}

namespace {

double gram_row(const MonomialBasis& basis, const MomentTables& t, std::span<const double> q, std::size_t i) {
  const auto& ai = basis[i].exponents;
  const std::size_t d = ai.size();
  double row = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const auto& aj = basis[j].exponents;
    double m = t.radial[static_cast<std::size_t>(basis[i].degree + basis[j].degree)];
    for (std::size_t v = 0; v < d && m != 0.0; ++v) m *= t.axis[static_cast<std::size_t>(ai[v] + aj[v])];
    row += q[j] * m;
  }
  return q[i] * row;
}

void check_quadratic_args(const MonomialBasis& basis, std::span<const double> q) {
  if (q.size() > basis.size()) throw DimensionMismatch("coefficient vector longer than basis");
}

void check_trig_args(std::span<const double> angles, std::span<const double> weights, int M) {
  if (angles.size() != weights.size()) throw DimensionMismatch("angles and weights differ in length");
  if (M < 0) throw std::invalid_argument("harmonic cutoff must be >= 0");
}

}  // namespace

namespace serial {

double gram_quadratic_form(const MonomialBasis& basis, std::span<const double> q) {
  check_quadratic_args(basis, q);
  int top = 0;
  for (std::size_t i = 0; i < q.size(); ++i) top = std::max(top, basis[i].degree);
  const auto t = moment_tables(basis.dim(), 2 * top);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += gram_row(basis, t, q, i);
  return sum;
}

TrigSums trig_sums(std::span<const double> angles, std::span<const double> weights, int M) {
  check_trig_args(angles, weights, M);
  TrigSums out{std::vector<double>(static_cast<std::size_t>(M) + 1, 0.0),
               std::vector<double>(static_cast<std::size_t>(M) + 1, 0.0)};
  for (int k = 0; k <= M; ++k) {
    for (std::size_t i = 0; i < angles.size(); ++i) {
      out.cos[static_cast<std::size_t>(k)] += weights[i] * std::cos(k * angles[i]);
      out.sin[static_cast<std::size_t>(k)] += weights[i] * std::sin(k * angles[i]);
    }
  }
  return out;
}

}  // namespace serial

namespace omp {

double gram_quadratic_form(const MonomialBasis& basis, std::span<const double> q) {
  check_quadratic_args(basis, q);
  int top = 0;
  for (std::size_t i = 0; i < q.size(); ++i) top = std::max(top, basis[i].degree);
  const auto t = moment_tables(basis.dim(), 2 * top);
  std::vector<double> rows(q.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(q.size()); ++i)
    rows[static_cast<std::size_t>(i)] = gram_row(basis, t, q, static_cast<std::size_t>(i));
  double sum = 0.0;
  for (double r : rows) sum += r;
  return sum;
}

TrigSums trig_sums(std::span<const double> angles, std::span<const double> weights, int M) {
  check_trig_args(angles, weights, M);
  const std::size_t width = static_cast<std::size_t>(M) + 1;
  const std::size_t n = angles.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> cos_part(blocks * width, 0.0);
  std::vector<double> sin_part(blocks * width, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double* cb = cos_part.data() + static_cast<std::size_t>(b) * width;
    double* sb = sin_part.data() + static_cast<std::size_t>(b) * width;
    for (std::size_t i = lo; i < hi; ++i) {
      // e^{i k a} by repeated rotation, re-anchored every 64 steps.
      const double c1 = std::cos(angles[i]);
      const double s1 = std::sin(angles[i]);
      double c = 1.0;
      double s = 0.0;
      for (std::size_t k = 0; k < width; ++k) {
        if (k % 64 == 0 && k > 0) {
          c = std::cos(static_cast<double>(k) * angles[i]);
          s = std::sin(static_cast<double>(k) * angles[i]);
        }
        cb[k] += weights[i] * c;
        sb[k] += weights[i] * s;
        const double cn = c * c1 - s * s1;
        s = s * c1 + c * s1;
        c = cn;
      }
    }
  }
  TrigSums out{std::vector<double>(width, 0.0), std::vector<double>(width, 0.0)};
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t k = 0; k < width; ++k) {
      out.cos[k] += cos_part[b * width + k];
      out.sin[k] += sin_part[b * width + k];
    }
  return out;
}

}  // namespace omp

double gram_quadratic_form(const MonomialBasis& basis, std::span<const double> q, ExecPolicy policy) {
  return policy == ExecPolicy::Parallel ? omp::gram_quadratic_form(basis, q) : serial::gram_quadratic_form(basis, q);
}

TrigSums trig_sums(std::span<const double> angles, std::span<const double> weights, int M, ExecPolicy policy) {
  return policy == ExecPolicy::Parallel ? omp::trig_sums(angles, weights, M) : serial::trig_sums(angles, weights, M);
}

}  // namespace tkernel
