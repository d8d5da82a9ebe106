#include <benchmark/benchmark.h>

#include "tcsim/config.hpp"
#include "tcsim/ekf.hpp"
#include "tcsim/metrics.hpp"
#include "tcsim/mpc.hpp"
#include "tcsim/rng.hpp"
#include "tcsim/scenario.hpp"

using namespace tcsim;

static void BM_Discretize(benchmark::State& state) {
  AccModelParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(discretize_acc_model(p));
  }
}
BENCHMARK(BM_Discretize);

static void BM_MpcSolve(benchmark::State& state) {
  AccModelParams model_params;
  MpcParams p;
  p.horizon = static_cast<int>(state.range(0));
  MpcController ctl(discretize_acc_model(model_params), p);
  NoiseStream rng(1);
  for (auto _ : state) {
    const AccErrorState err{3.0 * rng.normal(), 1.0 * rng.normal(),
                            0.5 * rng.normal()};
    benchmark::DoNotOptimize(ctl.solve(err));
  }
}
BENCHMARK(BM_MpcSolve)->Arg(5)->Arg(20)->Arg(40);

static void BM_Perceive(benchmark::State& state) {
  PerceptionParams params = default_config().perception;
  FogProfile fog = default_config().fog;
  NoiseStream radar_rng(1), lidar_rng(2);
  FusedEstimate est;
  est.gap = 37.0;
  int step = 0;
  for (auto _ : state) {
    est = perceive(step % 500, 37.0, 0.0, 0.1, params, fog, est, radar_rng,
                   lidar_rng)
              .fused;
    benchmark::DoNotOptimize(est);
    ++step;
  }
}
BENCHMARK(BM_Perceive);

static void BM_ScenarioRun(benchmark::State& state) {
  const ScenarioConfig cfg = default_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scenario(cfg));
  }
}
BENCHMARK(BM_ScenarioRun)->Unit(benchmark::kMillisecond);

static void BM_ThresholdSweep(benchmark::State& state) {
  const ScenarioConfig cfg = default_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold_sweep(cfg, {0.2, 0.5, 0.8}, cfg.safety));
  }
}
BENCHMARK(BM_ThresholdSweep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
