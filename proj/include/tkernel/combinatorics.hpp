#pragma once

// Dimensions of spherical polynomial spaces and the graded monomial basis.
//
// Notation used throughout the library:
//   P_k   homogeneous polynomials of degree k restricted to S^{d-1}
//   H_k   spherical harmonics of degree k
//   Pi_k  polynomials of degree <= k restricted to S^{d-1}
// and Pi_k(R^d) for the unrestricted space, whose monomial basis is the
// storage layout of every coefficient vector.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace tkernel {

// Checked binomial coefficient; throws ArithmeticOverflow past int64.
std::int64_t binomial(std::int64_t n, std::int64_t k);

std::int64_t dim_P(int d, int k);
// Same as dim_P but 0 for k < 0.
std::int64_t dim_P_safe(int d, int k);
std::int64_t dim_H(int d, int k);
std::int64_t dim_Pi_sphere(int d, int k);
std::int64_t dim_Pi_ambient(int d, int k);

struct MultiIndex {
  std::vector<int> exponents;
  int degree = 0;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e);

  int dim() const { return static_cast<int>(exponents.size()); }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// Checked m!/alpha! for |alpha| = m.
std::int64_t multinomial(const MultiIndex& alpha);

// Graded-lex basis of Pi_L(R^d): degree ascending, and within a degree
// x_1 dominates (so (1,0) comes before (0,1)). Raising L only appends.
class MonomialBasis {
 public:
  MonomialBasis(int d, int max_degree);

  int dim() const { return d_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  // Position of the first index of degree k; offset(L+1) == size().
  std::size_t offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  // Number of leading entries spanning Pi_k(R^d).
  std::size_t prefix_size(int k) const { return offsets_[static_cast<std::size_t>(k) + 1]; }

  // Every index past the first is parent + e_var, parent earlier in order.
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  int parent_var(std::size_t i) const { return parent_var_[i]; }

  // Position of alpha, or size() when absent.
  std::size_t find(const MultiIndex& alpha) const;

  // x^alpha for the first `count` indices, one multiply per entry.
  void monomials(std::span<const double> x, std::span<double> out) const;

 private:
  int d_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> parent_;
  std::vector<int> parent_var_;
};

MonomialBasis enumerate_basis(int d, int L);

// Process-wide cache of immutable bases keyed by (d, L).
std::shared_ptr<const MonomialBasis> shared_basis(int d, int L);

}  // namespace tkernel
