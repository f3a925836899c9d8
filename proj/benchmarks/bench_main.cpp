#include <benchmark/benchmark.h>

#include "permabound/betheopt.hpp"
#include "permabound/capacity.hpp"
#include "permabound/exactperm.hpp"
#include "permabound/matrix.hpp"
#include "permabound/randmodels.hpp"

using namespace permabound;

namespace {

Matrix random_positive(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform_open0();
  return m;
}

Matrix random_ds(int n, std::uint64_t seed, CorpusKind kind = CorpusKind::kDense) {
  Rng rng(seed);
  return random_doubly_stochastic(n, rng, kind);
}

void BM_Ryser(benchmark::State& state) {
  const Matrix m = random_positive(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Ryser)->DenseRange(8, 22, 2)->Unit(benchmark::kMicrosecond);

void BM_SubpermVector(benchmark::State& state) {
  const Matrix m = random_positive(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(subperm_vector(m));
}
BENCHMARK(BM_SubpermVector)->DenseRange(8, 18, 2)->Unit(benchmark::kMicrosecond);

void BM_Sinkhorn(benchmark::State& state) {
  const Matrix m = random_positive(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_scale(m, 1e-12));
}
BENCHMARK(BM_Sinkhorn)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMicrosecond);

void BM_MaximizeCwDense(benchmark::State& state) {
  const Matrix p = random_ds(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_cw(p));
}
BENCHMARK(BM_MaximizeCwDense)->DenseRange(3, 9, 3)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_MaximizeCwSparse(benchmark::State& state) {
  const Matrix p = random_ds(static_cast<int>(state.range(0)), 5, CorpusKind::kSparse);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_cw(p));
}
BENCHMARK(BM_MaximizeCwSparse)->DenseRange(3, 9, 3)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_CapacityQj(benchmark::State& state) {
  const Matrix p = random_ds(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(capacity_qj(p, 0));
}
BENCHMARK(BM_CapacityQj)->DenseRange(3, 7, 2)->Unit(benchmark::kMicrosecond);

void BM_SampleBm(benchmark::State& state) {
  Rng rng(7);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_bm(2, n, rng));
}
BENCHMARK(BM_SampleBm)->Arg(30)->Arg(100);

}  // namespace
BENCHMARK_MAIN();
