#include <random>

#include <benchmark/benchmark.h>

#include "bse2/random.hpp"
#include "bse2/rigidity.hpp"

namespace {

void BM_Analyze(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const bse2::Se2Framework f = bse2::random_framework(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(bse2::analyze(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Analyze)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_BearingRigidityMatrix(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const bse2::Se2Framework f = bse2::random_framework(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bse2::bearing_rigidity_matrix(f));
}
BENCHMARK(BM_BearingRigidityMatrix)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
