#include <benchmark/benchmark.h>

#include <vector>

#include "gaplab/centrality.hpp"
#include "gaplab/equilibrium.hpp"
#include "gaplab/gap.hpp"
#include "gaplab/montecarlo.hpp"

namespace {

using namespace gaplab;

struct Instance {
  InteractionMatrix p;
  std::vector<Eigen::VectorXd> shocks;
  std::vector<double> alphas;
};

Instance make_instance(int players, int block) {
  CounterRng rng(CounterRng::stream_key(42, static_cast<std::uint64_t>(players * 16 + block)));
  const BlockStructure s(std::vector<int>(static_cast<std::size_t>(players), block));
  auto p = gen_random_network(rng, s, 0.75);
  auto shocks = gen_shock_profile(rng, s, 0.5);
  auto alphas = gen_alpha_profile(rng, players, 0.2);
  return {std::move(p), std::move(shocks), std::move(alphas)};
}

void BM_NashEquilibrium(benchmark::State& state) {
  const auto inst = make_instance(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nash_equilibrium(inst.p, inst.shocks.front()));
  }
}
BENCHMARK(BM_NashEquilibrium)->Arg(4)->Arg(16)->Arg(64);

void BM_GapDirectAll(benchmark::State& state) {
  const auto inst = make_instance(static_cast<int>(state.range(0)), 2);
  const auto profile = ConjectureProfile::shared_network(inst.p, inst.shocks);
  for (auto _ : state) benchmark::DoNotOptimize(gap_direct_all(profile));
}
BENCHMARK(BM_GapDirectAll)->Arg(4)->Arg(16)->Arg(32);

void BM_ShockClosedForm(benchmark::State& state) {
  const auto inst = make_instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    for (int i = 0; i < inst.p.structure().players(); ++i) {
      benchmark::DoNotOptimize(gap_shock_closed_form(inst.p, inst.shocks, i));
    }
  }
}
BENCHMARK(BM_ShockClosedForm)->Arg(4)->Arg(16)->Arg(32);

void BM_CombinedClosedForm(benchmark::State& state) {
  const auto inst = make_instance(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gap_combined_closed_form(inst.p, inst.alphas, inst.shocks, 0));
  }
}
BENCHMARK(BM_CombinedClosedForm)->Arg(4)->Arg(8);

void BM_LeontiefCachePairs(benchmark::State& state) {
  const auto inst = make_instance(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    const LeontiefCache cache(inst.p);
    const int n = inst.p.structure().players();
    for (int i = 0; i < n; ++i) {
      benchmark::DoNotOptimize(cache.shock_pair(i, (i + 1) % n));
    }
  }
}
BENCHMARK(BM_LeontiefCachePairs)->Arg(4)->Arg(16);

void BM_MonteCarloTrials(benchmark::State& state) {
  McConfig config;
  config.delta_s = 0.5;
  config.trials = 200;
  config.master_seed = 1;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_trials(config, threads));
  state.SetItemsProcessed(state.iterations() * config.trials);
}
BENCHMARK(BM_MonteCarloTrials)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
