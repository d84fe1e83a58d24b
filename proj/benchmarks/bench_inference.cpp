#include <benchmark/benchmark.h>

#include <vector>

#include "mapt/density.hpp"
#include "mapt/empirical_bayes.hpp"
#include "mapt/inference_engine.hpp"
#include "mapt/scenarios.hpp"

namespace {

mapt::HyperParams hp_for(int states, int depth) {
  mapt::ModelConfig c;
  c.states = states;
  c.depth = depth;
  return mapt::make_hyperparams(c);
}

void BM_Forward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int I = static_cast<int>(state.range(1));
  const auto data = mapt::scenario_sample(2, n, 7);
  const auto hp = hp_for(I, 12);
  const auto tree = mapt::build_tree(data, hp.domain, hp.max_depth);
  for (auto _ : state) benchmark::DoNotOptimize(mapt::forward(tree, hp).log_marginal());
}
BENCHMARK(BM_Forward)->Args({125, 11})->Args({500, 11})->Args({1250, 11})->Args({1250, 2})
    ->Unit(benchmark::kMillisecond);

void BM_PpdBranch(benchmark::State& state) {
  const auto data = mapt::scenario_sample(2, 1250, 7);
  const auto est = mapt::DensityEstimate::fit(data, hp_for(11, 12));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(est.ppd(x));
    x += 0.000977;
    if (x > 1.0) x -= 1.0;
  }
}
BENCHMARK(BM_PpdBranch);

void BM_LeafDensity(benchmark::State& state) {
  const auto data = mapt::scenario_sample(2, 1250, 7);
  const auto est = mapt::DensityEstimate::fit(data, hp_for(11, 12));
  for (auto _ : state) benchmark::DoNotOptimize(est.leaf_density().total_mass());
}
BENCHMARK(BM_LeafDensity)->Unit(benchmark::kMillisecond);

void BM_EmpiricalBayes(benchmark::State& state) {
  const auto data = mapt::scenario_sample(2, static_cast<std::size_t>(state.range(0)), 7);
  const auto states = mapt::default_states_grid();
  const auto betas = mapt::default_beta_grid();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        mapt::empirical_bayes(data, mapt::Domain(0, 1), mapt::kDefaultDepth, states, betas).log_marginal);
}
BENCHMARK(BM_EmpiricalBayes)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
