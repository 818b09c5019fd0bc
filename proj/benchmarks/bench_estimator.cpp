#include <benchmark/benchmark.h>

#include "bse2/estimator.hpp"
#include "bse2/scenario.hpp"

namespace {

struct Demo {
  bse2::Se2Framework f = bse2::to_framework(bse2::builtin_demo(bse2::DemoKind::Rigid));
  bse2::EstimatorConfig cfg = bse2::to_estimator_config(bse2::builtin_demo(bse2::DemoKind::Rigid));
  bse2::Vector measured = bse2::bearing_rigidity_function(f);
  bse2::EstimatorState s0 = bse2::perturb_truth(f, cfg.iota, cfg.kappa, 0.1, 1);
};

void BM_GradientFlowRhs(benchmark::State& state) {
  const Demo d;
  for (auto _ : state) benchmark::DoNotOptimize(bse2::gradient_flow_rhs(d.s0, d.measured, d.cfg, d.f.graph()));
}
BENCHMARK(BM_GradientFlowRhs);

void BM_IntegrateOneSecond(benchmark::State& state) {
  Demo d;
  d.cfg.t_final = 1.0;
  d.cfg.sample_stride = 100;
  const bse2::Vector truth = bse2::true_unscaled_positions(d.f, d.cfg.iota, d.cfg.kappa);
  for (auto _ : state) benchmark::DoNotOptimize(bse2::integrate(d.s0, d.measured, d.cfg, d.f.graph(), truth));
}
BENCHMARK(BM_IntegrateOneSecond)->Unit(benchmark::kMillisecond);

}  // namespace
