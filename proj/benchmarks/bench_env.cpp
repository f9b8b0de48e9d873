#include <benchmark/benchmark.h>

#include "tridrop/pointmass.hpp"

using namespace tridrop;

namespace {

void BM_expert_episode(benchmark::State& state) {
    for (auto _ : state) {
        const Rollout r = run_episode(expert_action, {1.5, -0.5});
        benchmark::DoNotOptimize(r.cost);
    }
}

void BM_evaluate_expert(benchmark::State& state) {
    for (auto _ : state) {
        const PerfReport r = evaluate_policy(expert_action, 10, 1);
        benchmark::DoNotOptimize(r.normalized_score);
    }
}

void BM_collect_imitation(benchmark::State& state) {
    for (auto _ : state) {
        const Dataset ds = collect_imitation_dataset(10000, 0.1, 1);
        benchmark::DoNotOptimize(ds.inputs.data());
    }
}

}  // namespace

BENCHMARK(BM_expert_episode);
BENCHMARK(BM_evaluate_expert);
BENCHMARK(BM_collect_imitation);
