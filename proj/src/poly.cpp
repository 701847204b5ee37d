#include "tkernel/poly.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "tkernel/error.hpp"

namespace tkernel {

PolyCoeffs::PolyCoeffs(int d, int degree)
    : basis_(shared_basis(d, degree)), coeffs_(basis_->size(), 0.0) {}

PolyCoeffs::PolyCoeffs(int d, int degree, std::vector<double> coeffs)
    : basis_(shared_basis(d, degree)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size())
    throw DimensionMismatch("coefficient vector has " + std::to_string(coeffs_.size()) + " entries, basis has " +
                            std::to_string(basis_->size()));
}

void PolyCoeffs::grow(int L) {
  if (L <= degree()) return;
  basis_ = shared_basis(dim(), L);
  coeffs_.resize(basis_->size(), 0.0);
}

void PolyCoeffs::axpy(double scale, const PolyCoeffs& q) {
  if (q.dim() != dim()) throw DimensionMismatch("axpy between polynomials of different dimension");
  grow(q.degree());
  for (std::size_t i = 0; i < q.size(); ++i) coeffs_[i] += scale * q.coeffs_[i];
}

void require_unit(std::span<const double> x, double tol) {
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  if (!(std::abs(std::sqrt(norm2) - 1.0) <= tol))
    throw InvalidSample("point is not on the unit sphere (|x| = " + std::to_string(std::sqrt(norm2)) + ")");
}

double eval_poly(const PolyCoeffs& p, std::span<const double> x, Summation mode) {
  if (x.size() != static_cast<std::size_t>(p.dim()))
    throw DimensionMismatch("point dimension does not match polynomial dimension");
  require_unit(x);
  std::vector<double> mono(p.size());
  p.basis().monomials(x, mono);
  const auto c = p.coeffs();
  if (mode == Summation::Plain) {
    double sum = 0.0;
    for (std::size_t i = 0; i < mono.size(); ++i) sum += c[i] * mono[i];
    return sum;
  }
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    const double y = c[i] * mono[i] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

PolyCoeffs axpy(PolyCoeffs p, double scale, const PolyCoeffs& q) {
  p.axpy(scale, q);
  return p;
}

std::vector<double> inner_power_expansion(int d, int m) {
  if (m < 0) throw std::invalid_argument("power must be >= 0");
  const auto basis = shared_basis(d, m);
  std::vector<double> out;
  out.reserve(basis->prefix_size(m) - basis->offset(m));
  for (std::size_t i = basis->offset(m); i < basis->prefix_size(m); ++i)
    out.push_back(static_cast<double>(multinomial((*basis)[i])));
  return out;
}

KernelCoeffTable::KernelCoeffTable(KernelFamily fam, int max_degree)
    : fam_(fam), max_degree_(max_degree), basis_(shared_basis(fam.dim(), 0)), table_{fam.weight(0)} {}

KernelCoeffTable KernelCoeffTable::build(KernelFamily fam, int L, int max_degree) {
  if (L > max_degree)
    throw DegreeLimitError("table level " + std::to_string(L) + " exceeds limit " + std::to_string(max_degree));
  KernelCoeffTable tbl(fam, max_degree);
  tbl.level_ = L;
  tbl.basis_ = shared_basis(fam.dim(), L);
  tbl.table_.assign(tbl.basis_->size(), 0.0);
  for (int m = 0; m <= L; ++m) {
    // Scalar multiplying <x,x'>^m: sum over k = m, m+2, ... <= L.
    double scalar = 0.0;
    for (int k = m; k <= L; k += 2) {
      const auto& terms = Kk_gegenbauer_coeffs(fam.dim(), k, max_degree);
      scalar += fam.weight(k) * terms[static_cast<std::size_t>((k - m) / 2)].coeff;
    }
    const auto mult = inner_power_expansion(fam.dim(), m);
    const std::size_t base = tbl.basis_->offset(m);
    for (std::size_t i = 0; i < mult.size(); ++i) tbl.table_[base + i] = scalar * mult[i];
  }
  return tbl;
}

void KernelCoeffTable::increment() {
  const int next = level_ + 1;
  if (next > max_degree_)
    throw DegreeLimitError("table level " + std::to_string(next) + " exceeds limit " + std::to_string(max_degree_));
  basis_ = shared_basis(fam_.dim(), next);
  table_.resize(basis_->size(), 0.0);
  const double w = fam_.weight(next);
  for (const auto& term : Kk_gegenbauer_coeffs(fam_.dim(), next, max_degree_)) {
    const auto mult = inner_power_expansion(fam_.dim(), term.power);
    const std::size_t base = basis_->offset(term.power);
    for (std::size_t i = 0; i < mult.size(); ++i) table_[base + i] += w * term.coeff * mult[i];
  }
  level_ = next;
}

PolyCoeffs KernelCoeffTable::slice_at(std::span<const double> x) const {
  std::vector<double> mono(table_.size());
  basis_->monomials(x, mono);
  for (std::size_t i = 0; i < mono.size(); ++i) mono[i] *= table_[i];
  return PolyCoeffs(fam_.dim(), level_, std::move(mono));
}

KernelCoeffTable kernel_table_increment(KernelCoeffTable tbl) {
  tbl.increment();
  return tbl;
}

PolyCoeffs kernel_slice_at(const KernelCoeffTable& tbl, std::span<const double> x) { return tbl.slice_at(x); }

}  // namespace tkernel
