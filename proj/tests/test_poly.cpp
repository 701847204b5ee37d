#include <doctest.h>

#include <cmath>

#include "tkernel/data.hpp"
#include "tkernel/error.hpp"
#include "tkernel/poly.hpp"

using namespace tkernel;

TEST_CASE("eval_poly examples") {
  PolyCoeffs c(2, 0, {2.0});
  const double y[2] = {0.0, 1.0};
  CHECK(eval_poly(c, y) == 2.0);

  PolyCoeffs lin(2, 1, {0.0, 1.0, 1.0});
  const double x[2] = {0.6, 0.8};
  CHECK(eval_poly(lin, x) == doctest::Approx(1.4));

  PolyCoeffs ones(2, 2, std::vector<double>(6, 1.0));
  const double e1[2] = {1.0, 0.0};
  CHECK(eval_poly(ones, e1) == doctest::Approx(3.0));
  CHECK(eval_poly(ones, e1, Summation::Kahan) == doctest::Approx(3.0));
}

TEST_CASE("eval_poly checks its input") {
  PolyCoeffs p(3, 1);
  const double off[3] = {1.0, 0.1, 0.0};
  CHECK_THROWS_AS(eval_poly(p, off), InvalidSample);
  const double two[2] = {1.0, 0.0};
  CHECK_THROWS_AS(eval_poly(p, two), DimensionMismatch);
  CHECK_THROWS(PolyCoeffs(2, 1, {1.0, 2.0}));
}

TEST_CASE("grow preserves and zero-fills") {
  PolyCoeffs p(3, 1, {1.0, 2.0, 3.0, 4.0});
  p.grow(3);
  CHECK(p.degree() == 3);
  CHECK(p.size() == 20);
  CHECK(p[3] == 4.0);
  for (std::size_t i = 4; i < 20; ++i) CHECK(p[i] == 0.0);
  p.grow(2);
  CHECK(p.degree() == 3);
}

TEST_CASE("axpy") {
  RngStream rng({1, "axpy"});
  PolyCoeffs p(2, 1, {1.0, 2.0, 3.0});
  PolyCoeffs q(2, 2, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
  const auto r = axpy(p, 0.5, q);
  CHECK(r.degree() == 2);
  CHECK(r[0] == 1.5);
  CHECK(r[2] == 3.5);
  CHECK(r[5] == 0.5);
  CHECK(axpy(p, -1.0, p) == PolyCoeffs(2, 1, {0.0, 0.0, 0.0}));
  CHECK(axpy(PolyCoeffs(2, 2), 0.25, q) == PolyCoeffs(2, 2, std::vector<double>(6, 0.25)));
  for (int trial = 0; trial < 20; ++trial) {
    PolyCoeffs a(3, 3);
    PolyCoeffs b(3, 4);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = rng.normal();
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = rng.normal();
    const double s = rng.normal();
    const auto x = sample_uniform_sphere(rng, 3);
    CHECK(eval_poly(axpy(a, s, b), x) == doctest::Approx(eval_poly(a, x) + s * eval_poly(b, x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(axpy(PolyCoeffs(2, 1), 1.0, PolyCoeffs(3, 1)), DimensionMismatch);
}

TEST_CASE("inner_power_expansion") {
  CHECK(inner_power_expansion(2, 2) == std::vector<double>{1.0, 2.0, 1.0});
  CHECK(inner_power_expansion(3, 0) == std::vector<double>{1.0});
  CHECK(inner_power_expansion(2, 3) == std::vector<double>{1.0, 3.0, 3.0, 1.0});
  RngStream rng({2, "multinomial"});
  for (int d = 2; d <= 5; ++d) {
    const auto basis = shared_basis(d, 10);
    std::vector<double> mono(basis->size());
    const auto x = sample_uniform_sphere(rng, d);
    basis->monomials(x, mono);
    for (int m = 0; m <= 10; ++m) {
      const auto c = inner_power_expansion(d, m);
      double sum = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * mono[basis->offset(m) + i] * mono[basis->offset(m) + i];
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("kernel table increment examples") {
  KernelCoeffTable t(KernelFamily::general(3, 1.0));
  CHECK(t.level() == 0);
  REQUIRE(t.size() == 1);
  CHECK(t.values()[0] == 1.0);
  t.increment();
  REQUIRE(t.size() == 4);
  CHECK(t.values()[0] == 1.0);
  for (std::size_t i = 1; i < 4; ++i) CHECK(t.values()[i] == doctest::Approx(3.0 / 16.0));

  const double e1[3] = {1.0, 0.0, 0.0};
  const auto slice = t.slice_at(e1);
  CHECK(slice[0] == 1.0);
  CHECK(slice[1] == doctest::Approx(0.1875));
  CHECK(slice[2] == 0.0);
  CHECK(slice[3] == 0.0);

  KernelCoeffTable c(KernelFamily::circle(1.0));
  c.increment();
  REQUIRE(c.size() == 3);
  CHECK(c.values()[1] == doctest::Approx(0.25));
  CHECK(c.values()[2] == doctest::Approx(0.25));

  const auto l0 = kernel_slice_at(KernelCoeffTable(KernelFamily::general(3, 1.0)), e1);
  CHECK(l0.size() == 1);
  CHECK(l0[0] == 1.0);
}

TEST_CASE("kernel slice matches the truncated kernel") {
  RngStream rng({4, "slice"});
  for (int d : {2, 3})
    for (double s : {1.0, 2.0})
      for (auto variant : {KernelVariant::GeneralSeries, KernelVariant::CircleBernoulli}) {
        if (variant == KernelVariant::CircleBernoulli && d != 2) continue;
        const KernelFamily fam(d, s, variant);
        KernelCoeffTable tbl(fam);
        for (int L = 0; L <= 8; ++L) {
          if (L > 0) tbl = kernel_table_increment(tbl);
          for (int trial = 0; trial < 100; ++trial) {
            const auto x = sample_uniform_sphere(rng, d);
            const auto y = sample_uniform_sphere(rng, d);
            double t = 0.0;
            for (int i = 0; i < d; ++i) t += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
            CHECK(std::abs(eval_poly(tbl.slice_at(x), y) - eval_truncated_kernel(fam, L, InnerProduct(t))) <= 1e-9);
          }
        }
      }
}

TEST_CASE("incremental table equals a from-scratch build") {
  for (int d : {2, 3, 4}) {
    const auto fam = KernelFamily::general(d, 1.0);
    KernelCoeffTable inc(fam);
    for (int L = 1; L <= 10; ++L) {
      inc.increment();
      const auto scratch = KernelCoeffTable::build(fam, L);
      REQUIRE(scratch.size() == inc.size());
      for (std::size_t i = 0; i < inc.size(); ++i)
        CHECK(std::abs(inc.values()[i] - scratch.values()[i]) <= 1e-12 * std::max(1.0, std::abs(scratch.values()[i])));
    }
  }
}

TEST_CASE("table increment touches only the new parity") {
  const auto fam = KernelFamily::general(3, 1.0);
  KernelCoeffTable t = KernelCoeffTable::build(fam, 4);
  const std::vector<double> before(t.values().begin(), t.values().end());
  t.increment();
  for (std::size_t i = 0; i < before.size(); ++i)
    if (t.basis()[i].degree % 2 == 0) CHECK(t.values()[i] == before[i]);
}

TEST_CASE("table degree limit") {
  KernelCoeffTable t(KernelFamily::general(3, 1.0), 2);
  t.increment();
  t.increment();
  CHECK_THROWS_AS(t.increment(), DegreeLimitError);
}
