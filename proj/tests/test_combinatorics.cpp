#include <doctest.h>

#include <cmath>
#include <limits>

#include "tkernel/combinatorics.hpp"
#include "tkernel/error.hpp"

using namespace tkernel;

TEST_CASE("dim_P") {
  CHECK(dim_P(3, 2) == 6);
  CHECK(dim_P(2, 0) == 1);
  CHECK(dim_P(3, 5) == 21);
  CHECK(dim_P_safe(3, -1) == 0);
  CHECK(dim_P_safe(3, -2) == 0);
}

TEST_CASE("dim_H") {
  CHECK(dim_H(3, 4) == 9);
  CHECK(dim_H(2, 0) == 1);
  CHECK(dim_H(2, 7) == 2);
  for (int k = 0; k <= 30; ++k) CHECK(dim_H(3, k) == 2 * k + 1);
}

TEST_CASE("dim_Pi_sphere") {
  CHECK(dim_Pi_sphere(2, 5) == 11);
  CHECK(dim_Pi_sphere(3, 2) == 9);
  CHECK(dim_Pi_sphere(3, 0) == 1);
  for (int k = 0; k <= 30; ++k) {
    CHECK(dim_Pi_sphere(2, k) == 2 * k + 1);
    CHECK(dim_Pi_sphere(3, k) == (k + 1) * (k + 1));
  }
}

TEST_CASE("dim_Pi_ambient") {
  CHECK(dim_Pi_ambient(3, 2) == 10);
  CHECK(dim_Pi_ambient(2, 1) == 3);
  CHECK(dim_Pi_ambient(3, 10) == 286);
}

TEST_CASE("dimension bounds") {
  for (int d = 2; d <= 6; ++d)
    for (int k = 0; k <= 30; ++k) {
      CHECK(dim_Pi_sphere(d, k + 1) <= 2 * d * dim_Pi_sphere(d, k));
      if (k >= 1) {
        const double bound = (1.0 + static_cast<double>(d) / k) *
                             std::pow(static_cast<double>(dim_Pi_sphere(d, k)), static_cast<double>(d) / (d - 1));
        CHECK(static_cast<double>(dim_Pi_ambient(d, k)) <= bound);
      }
    }
}

TEST_CASE("overflow is reported, not wrapped") {
  CHECK_THROWS_AS(binomial(200, 100), ArithmeticOverflow);
  CHECK_THROWS_AS(dim_Pi_ambient(40, 60), ArithmeticOverflow);
}

TEST_CASE("enumerate_basis order and counts") {
  const auto b = enumerate_basis(2, 1);
  REQUIRE(b.size() == 3);
  CHECK(b[0].exponents == std::vector<int>{0, 0});
  CHECK(b[1].exponents == std::vector<int>{1, 0});
  CHECK(b[2].exponents == std::vector<int>{0, 1});

  const auto b2 = enumerate_basis(2, 2);
  REQUIRE(b2.size() == 6);
  for (std::size_t i = 3; i < 6; ++i) CHECK(b2[i].degree == 2);
  CHECK(enumerate_basis(3, 4).size() == 35);
}

TEST_CASE("basis invariants") {
  for (int d = 2; d <= 5; ++d)
    for (int L = 0; L <= 8; ++L) {
      const auto b = enumerate_basis(d, L);
      CHECK(static_cast<std::int64_t>(b.size()) == dim_Pi_ambient(d, L));
      std::int64_t count = 0;
      for (int k = 0; k <= L; ++k) count += static_cast<std::int64_t>(b.offset(k + 1) - b.offset(k));
      CHECK(count == dim_Pi_ambient(d, L));
      // strictly graded-lex, no duplicates, parent relation holds
      for (std::size_t i = 1; i < b.size(); ++i) {
        const auto& a = b[i - 1];
        const auto& c = b[i];
        CHECK((a.degree < c.degree || (a.degree == c.degree && a.exponents > c.exponents)));
        auto p = b[b.parent(i)].exponents;
        CHECK(b.parent(i) < i);
        p[static_cast<std::size_t>(b.parent_var(i))] += 1;
        CHECK(p == c.exponents);
      }
      // prefix stability
      const auto next = enumerate_basis(d, L + 1);
      for (std::size_t i = 0; i < b.size(); ++i) CHECK(next[i] == b[i]);
      for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.find(b[i]) == i);
    }
}

TEST_CASE("multinomial") {
  CHECK(multinomial(MultiIndex({1, 1})) == 2);
  CHECK(multinomial(MultiIndex({2, 1, 1})) == 12);
  CHECK(multinomial(MultiIndex({0, 0, 0})) == 1);
}

TEST_CASE("monomials by graded recursion") {
  const auto b = enumerate_basis(3, 4);
  const double x[3] = {0.48, 0.6, 0.64};
  std::vector<double> out(b.size());
  b.monomials(x, out);
  for (std::size_t i = 0; i < b.size(); ++i) {
    double direct = 1.0;
    for (int v = 0; v < 3; ++v) direct *= std::pow(x[v], b[i].exponents[static_cast<std::size_t>(v)]);
    CHECK(out[i] == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("shared_basis caches") {
  const auto a = shared_basis(3, 5);
  const auto b = shared_basis(3, 5);
  CHECK(a.get() == b.get());
  CHECK(a->size() == 56);
}
