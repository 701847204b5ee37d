#pragma once

// Dense polynomials over the graded monomial basis, and the coefficient
// table c1(alpha) with K^T_L(x, x') = sum_alpha c1(alpha) x'^alpha x^alpha.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "tkernel/combinatorics.hpp"
#include "tkernel/kernels.hpp"

namespace tkernel {

enum class Summation { Plain, Kahan };

class PolyCoeffs {
 public:
  PolyCoeffs(int d, int degree);
  PolyCoeffs(int d, int degree, std::vector<double> coeffs);

  int dim() const { return basis_->dim(); }
  int degree() const { return basis_->max_degree(); }
  std::size_t size() const { return coeffs_.size(); }
  const MonomialBasis& basis() const { return *basis_; }

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }
  double& operator[](std::size_t i) { return coeffs_[i]; }

  // Raises the degree to L (no-op when L <= degree); new entries are zero.
  void grow(int L);

  // this += scale * q, growing first if q has higher degree.
  void axpy(double scale, const PolyCoeffs& q);

  friend bool operator==(const PolyCoeffs& a, const PolyCoeffs& b) {
    return a.dim() == b.dim() && a.degree() == b.degree() && a.coeffs_ == b.coeffs_;
  }

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<double> coeffs_;
};

// Requires |x| = 1 within 1e-9.
double eval_poly(const PolyCoeffs& p, std::span<const double> x, Summation mode = Summation::Plain);

PolyCoeffs axpy(PolyCoeffs p, double scale, const PolyCoeffs& q);

// Coefficients m!/alpha! of <x,x'>^m, aligned with the degree-m block of
// the basis (positions offset(m) .. offset(m+1)).
std::vector<double> inner_power_expansion(int d, int m);

class KernelCoeffTable {
 public:
  // Level-0 table: K^T_0 = w_0.
  explicit KernelCoeffTable(KernelFamily fam, int max_degree = kDefaultMaxDegree);

  // Table at level L assembled degree by degree, without incremental updates.
  static KernelCoeffTable build(KernelFamily fam, int L, int max_degree = kDefaultMaxDegree);

  const KernelFamily& family() const { return fam_; }
  int level() const { return level_; }
  std::size_t size() const { return table_.size(); }
  std::span<const double> values() const { return table_; }
  const MonomialBasis& basis() const { return *basis_; }

  // Level L -> L+1: adds w_{L+1} * sum_j c(d, L+1, j) <x,x'>^{L+1-2j}.
  void increment();

  // Polynomial y -> K^T_L(x, y).
  PolyCoeffs slice_at(std::span<const double> x) const;

 private:
  KernelFamily fam_;
  int max_degree_;
  int level_ = 0;
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<double> table_;
};

KernelCoeffTable kernel_table_increment(KernelCoeffTable tbl);
PolyCoeffs kernel_slice_at(const KernelCoeffTable& tbl, std::span<const double> x);

// Throws InvalidSample when | |x| - 1 | > tol.
void require_unit(std::span<const double> x, double tol = 1e-9);

}  // namespace tkernel
