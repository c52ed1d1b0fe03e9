#include <benchmark/benchmark.h>

#include "dcm/collapsed.hpp"
#include "dcm/degseq.hpp"
#include "dcm/dynamics.hpp"
#include "dcm/graph.hpp"
#include "dcm/stationary.hpp"

using namespace dcm;

static void BM_SampleDcm(benchmark::State& state) {
  const DegreeSequence seq = make_regular(3, static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_dcm(seq, seed++));
  state.SetItemsProcessed(state.iterations() * seq.m());
}
BENCHMARK(BM_SampleDcm)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_Stationary(benchmark::State& state) {
  const SampledGraph g = sample_ergodic_dcm(make_regular(3, static_cast<int>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(stationary(g.graph));
}
BENCHMARK(BM_Stationary)->Arg(1000)->Arg(10000);

static void BM_CollapsedApply(benchmark::State& state) {
  const SampledGraph g = sample_ergodic_dcm(make_regular(3, static_cast<int>(state.range(0))), 3);
  const StationaryDist dist = stationary(g.graph);
  const CollapsedChain chain = build_collapsed(g.graph, dist);
  std::vector<double> in(chain.state_count(), 0.0), out(chain.state_count());
  in[chain.diagonal_state()] = 1.0;
  for (auto _ : state) {
    chain.apply(in, out);
    std::swap(in, out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(chain.state_count()));
}
BENCHMARK(BM_CollapsedApply)->Arg(100)->Arg(500);

static void BM_RtGreenFunction(benchmark::State& state) {
  const SampledGraph g = sample_ergodic_dcm(make_regular(3, 200), 5);
  const StationaryDist dist = stationary(g.graph);
  const CollapsedChain chain = build_collapsed(g.graph, dist);
  for (auto _ : state) benchmark::DoNotOptimize(r_t(chain, state.range(0)));
}
BENCHMARK(BM_RtGreenFunction)->Arg(100)->Arg(1000);

static void BM_SimulateMeeting(benchmark::State& state) {
  const SampledGraph g = sample_ergodic_dcm(make_regular(3, static_cast<int>(state.range(0))), 7);
  const StationaryDist dist = stationary(g.graph);
  SimOptions opt;
  opt.trials = 100;
  std::uint64_t seed = 11;
  for (auto _ : state) {
    opt.seed = seed++;
    benchmark::DoNotOptimize(simulate_meeting(g.graph, dist, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.trials);
}
BENCHMARK(BM_SimulateMeeting)->Arg(1000)->Arg(5000);

static void BM_SimulateForest(benchmark::State& state) {
  const DegreeSequence seq = make_regular(3, 1000);
  std::uint64_t seed = 13;
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_forest(seq, nullptr, 500, 1000, seed++));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SimulateForest);

BENCHMARK_MAIN();
