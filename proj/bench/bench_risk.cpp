// Serial reference vs OpenMP risk kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "tkernel/data.hpp"
#include "tkernel/eval.hpp"
#include "tkernel/risk_kernels.hpp"

namespace {

using namespace tkernel;

const TestSet& sphere_test_set() {
  static const TestSet set = draw_test_set(TargetFunction::s2_poly(), {1, "bench"}, 100000);
  return set;
}

PolyCoeffs random_poly(int d, int L) {
  RngStream rng({2, "bench-poly"});
  PolyCoeffs p(d, L);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = rng.normal();
  return p;
}

template <ExecPolicy P>
void BM_SquaredResiduals(benchmark::State& state) {
  const auto& set = sphere_test_set();
  const auto p = random_poly(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto m = squared_residuals(set, [&](std::span<const double> x) { return eval_poly(p, x); }, P);
    benchmark::DoNotOptimize(m.sum_sq);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(set.size()));
}

template <ExecPolicy P>
void BM_GramQuadraticForm(benchmark::State& state) {
  const auto p = random_poly(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gram_quadratic_form(p.basis(), p.coeffs(), P));
}

template <ExecPolicy P>
void BM_TrigSums(benchmark::State& state) {
  RngStream rng({3, "bench-trig"});
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> angles(n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    angles[i] = 6.283185307179586 * rng.uniform();
    weights[i] = rng.normal();
  }
  for (auto _ : state) {
    auto sums = trig_sums(angles, weights, kDefaultHarmonicCutoff, P);
    benchmark::DoNotOptimize(sums.cos.data());
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_SquaredResiduals, ExecPolicy::Serial)->Arg(4)->Arg(10);
BENCHMARK_TEMPLATE(BM_SquaredResiduals, ExecPolicy::Parallel)->Arg(4)->Arg(10);
BENCHMARK_TEMPLATE(BM_GramQuadraticForm, ExecPolicy::Serial)->Arg(8)->Arg(13);
BENCHMARK_TEMPLATE(BM_GramQuadraticForm, ExecPolicy::Parallel)->Arg(8)->Arg(13);
BENCHMARK_TEMPLATE(BM_TrigSums, ExecPolicy::Serial)->Arg(1000)->Arg(10000);
BENCHMARK_TEMPLATE(BM_TrigSums, ExecPolicy::Parallel)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
