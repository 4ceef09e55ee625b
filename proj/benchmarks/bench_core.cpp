#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "resistnet/resistance.hpp"
#include "resistnet/rgg.hpp"
#include "resistnet/robustness.hpp"
#include "resistnet/simulation.hpp"
#include "resistnet/stability.hpp"

using namespace resistnet;

namespace {

const WeightedGraph& rgg(Index n) {
  static std::map<Index, WeightedGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, generate_rgg(n, 0.6, 6, 3.0 * std::sqrt(n / 75.0))).first;
  return it->second;
}

void BM_EffectiveResistance(benchmark::State& state) {
  const WeightedGraph& g = rgg(static_cast<Index>(state.range(0)));
  const Edge& e = g.edge(0);
  for (auto _ : state) benchmark::DoNotOptimize(effective_resistance(g, e.tail, e.head));
}
BENCHMARK(BM_EffectiveResistance)->Arg(25)->Arg(75)->Arg(150);

void BM_ClassifyStability(benchmark::State& state) {
  const WeightedGraph& g = rgg(static_cast<Index>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_stability(g));
}
BENCHMARK(BM_ClassifyStability)->Arg(25)->Arg(75)->Arg(150);

void BM_WorstSingleEdge(benchmark::State& state) {
  const WeightedGraph& g = rgg(static_cast<Index>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(worst_single_edge(g));
}
BENCHMARK(BM_WorstSingleEdge)->Arg(25)->Arg(75);

void BM_Rk4Steps(benchmark::State& state) {
  const WeightedGraph& g = rgg(75);
  SimulationConfig cfg;
  cfg.dt = 1.0 / spectral_radius(laplacian(g));
  cfg.duration = cfg.dt * static_cast<double>(state.range(0));
  cfg.record_stride = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_linear(g, std::nullopt, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rk4Steps)->Arg(1000)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
