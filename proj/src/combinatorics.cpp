#include "tkernel/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "tkernel/error.hpp"

namespace tkernel {

namespace {

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("ambient dimension must be >= 2, got " + std::to_string(d));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("dimension sum overflows int64");
  return r;
}

// Appends every exponent vector of total degree m over `vars` variables,
// with the leading variable taking its largest power first.
void append_degree(int vars, int m, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (vars == 1) {
    prefix.push_back(m);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = m; e >= 0; --e) {
    prefix.push_back(e);
    append_degree(vars - 1, m - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > INT64_MAX) throw ArithmeticOverflow("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows int64");
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t dim_P(int d, int k) {
  require_dim(d);
  if (k < 0) throw std::invalid_argument("dim_P: degree must be >= 0");
  return binomial(k + d - 1, d - 1);
}

std::int64_t dim_P_safe(int d, int k) {
  require_dim(d);
  return k < 0 ? 0 : dim_P(d, k);
}

std::int64_t dim_H(int d, int k) {
  if (k < 0) throw std::invalid_argument("dim_H: degree must be >= 0");
  return dim_P(d, k) - dim_P_safe(d, k - 2);
}

std::int64_t dim_Pi_sphere(int d, int k) {
  if (k < 0) throw std::invalid_argument("dim_Pi_sphere: degree must be >= 0");
  return checked_add(dim_P(d, k), dim_P_safe(d, k - 1));
}

std::int64_t dim_Pi_ambient(int d, int k) {
  require_dim(d);
  if (k < 0) throw std::invalid_argument("dim_Pi_ambient: degree must be >= 0");
  return binomial(k + d, d);
}

MultiIndex::MultiIndex(std::vector<int> e)
    : exponents(std::move(e)), degree(std::accumulate(exponents.begin(), exponents.end(), 0)) {}

std::int64_t multinomial(const MultiIndex& alpha) {
  // Product of binomials C(a_1 + ... + a_i, a_i).
  std::int64_t r = 1;
  std::int64_t running = 0;
  for (int a : alpha.exponents) {
    running += a;
    if (__builtin_mul_overflow(r, binomial(running, a), &r))
      throw ArithmeticOverflow("multinomial coefficient overflows int64");
  }
  return r;
}

MonomialBasis::MonomialBasis(int d, int max_degree) : d_(d), max_degree_(max_degree) {
  require_dim(d);
  if (max_degree < 0) throw std::invalid_argument("basis degree must be >= 0");
  const auto total = static_cast<std::size_t>(dim_Pi_ambient(d, max_degree));
  indices_.reserve(total);
  offsets_.reserve(static_cast<std::size_t>(max_degree) + 2);
  std::vector<int> prefix;
  for (int m = 0; m <= max_degree; ++m) {
    offsets_.push_back(indices_.size());
    append_degree(d, m, prefix, indices_);
  }
  offsets_.push_back(indices_.size());

  std::map<std::vector<int>, std::size_t> position;
  for (std::size_t i = 0; i < indices_.size(); ++i) position.emplace(indices_[i].exponents, i);

  parent_.assign(indices_.size(), 0);
  parent_var_.assign(indices_.size(), -1);
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    std::vector<int> e = indices_[i].exponents;
    int v = 0;
    while (e[static_cast<std::size_t>(v)] == 0) ++v;
    --e[static_cast<std::size_t>(v)];
    parent_[i] = position.at(e);
    parent_var_[i] = v;
  }
}

std::size_t MonomialBasis::find(const MultiIndex& alpha) const {
  if (alpha.dim() != d_ || alpha.degree > max_degree_) return size();
  for (std::size_t i = offset(alpha.degree); i < prefix_size(alpha.degree); ++i)
    if (indices_[i].exponents == alpha.exponents) return i;
  return size();
}

void MonomialBasis::monomials(std::span<const double> x, std::span<double> out) const {
  if (x.size() != static_cast<std::size_t>(d_))
    throw DimensionMismatch("point has dimension " + std::to_string(x.size()) + ", basis expects " + std::to_string(d_));
  if (out.size() > size()) throw DimensionMismatch("monomial request exceeds basis size");
  if (out.empty()) return;
  out[0] = 1.0;
  for (std::size_t i = 1; i < out.size(); ++i)
    out[i] = out[parent_[i]] * x[static_cast<std::size_t>(parent_var_[i])];
}

MonomialBasis enumerate_basis(int d, int L) { return MonomialBasis(d, L); }

std::shared_ptr<const MonomialBasis> shared_basis(int d, int L) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{d, L}];
  if (!slot) slot = std::make_shared<const MonomialBasis>(d, L);
  return slot;
}

}  // namespace tkernel
