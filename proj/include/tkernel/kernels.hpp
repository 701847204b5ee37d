#pragma once

// Zonal kernels on S^{d-1}.
//
// K_k is the reproducing kernel of the degree-k harmonics H_k, written as a
// function of t = <x, x'>. For d >= 3 it is normalised so that K_k(1) =
// dim H_k. On the circle we use K_k(t) = cos(k arccos t), the normalisation
// the Bernoulli closed forms are built on; the Pochhammer expansion gives
// twice that for k >= 1 and is halved accordingly.

#include <cstdint>
#include <vector>

namespace tkernel {

inline constexpr int kDefaultMaxDegree = 200;
inline constexpr double kInnerProductTolerance = 1e-12;

enum class KernelVariant { GeneralSeries, CircleBernoulli };

// Component weights w_k of K = sum_k w_k K_k.
//   GeneralSeries:   w_k = (dim Pi_k)^{-2s}
//   CircleBernoulli: w_0 = 1, w_k = (2k)^{-2s}   (d = 2 only)
class KernelFamily {
 public:
  KernelFamily(int d, double s, KernelVariant variant);

  static KernelFamily general(int d, double s) { return {d, s, KernelVariant::GeneralSeries}; }
  static KernelFamily circle(double s) { return {2, s, KernelVariant::CircleBernoulli}; }

  int dim() const { return d_; }
  double s() const { return s_; }
  KernelVariant variant() const { return variant_; }
  double weight(int k) const;

  // True when the untruncated kernel has a Bernoulli closed form.
  bool has_closed_form() const;

  friend bool operator==(const KernelFamily&, const KernelFamily&) = default;

 private:
  int d_;
  double s_;
  KernelVariant variant_;
};

// Unit-sphere inner product, clamped to [-1, 1]. Values further than
// kInnerProductTolerance outside the interval are rejected.
class InnerProduct {
 public:
  explicit InnerProduct(double t);
  double value() const { return t_; }

 private:
  double t_;
};

// Term c * t^power of the expansion of K_k in powers of t.
struct PowerTerm {
  int power;
  double coeff;
};

// K_k(t) by the three-term recurrence (Chebyshev for d = 2, Gegenbauer
// C_k^{(d-2)/2} scaled by (k + lambda)/lambda for d >= 3).
double eval_Kk(int d, int k, InnerProduct t, int max_degree = kDefaultMaxDegree);

// K_k = sum_j c(d,k,j) t^{k-2j}, terms ordered by descending power.
// Coefficients come from a ratio recurrence in j and are cached per (d, k).
const std::vector<PowerTerm>& Kk_gegenbauer_coeffs(int d, int k, int max_degree = kDefaultMaxDegree);

// Truncated kernel K^T_L(t) = sum_{k <= L} w_k K_k(t).
double eval_truncated_kernel(const KernelFamily& fam, int L, InnerProduct t,
                             int max_degree = kDefaultMaxDegree);

// B_2 and B_4.
double bernoulli_polynomial(int l, double x);

// Polar angle of a point on S^1, in [0, 2 pi).
double circle_angle(double x1, double x2);

// Fractional part of delta / (2 pi), in [0, 1).
double angle_fraction(double delta);

// sum_{k>=1} (2k)^{-2s} cos(k delta) in closed form, s in {1, 2}.
// The constant component K_0 = 1 is not included.
double eval_circle_closed_form(int s, double delta);

}  // namespace tkernel
