#include <benchmark/benchmark.h>

#include "dynavg/protocol.hpp"
#include "dynavg/rng.hpp"
#include "dynavg/simulator.hpp"

namespace {

using namespace dynavg;

void BM_SplitMix64(benchmark::State& state) {
    Rng64 rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_SplitMix64);

void BM_DrawExample(benchmark::State& state) {
    StreamSpec spec;
    spec.dim = static_cast<std::size_t>(state.range(0));
    std::uint64_t t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(draw_example(spec, ++t, 1));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DrawExample)->Arg(10)->Arg(100);

void BM_PaUpdate(benchmark::State& state) {
    Rng64 rng(3);
    const std::size_t dim = 10;
    const Example z{rng.next_unit_vec(dim), 1};
    const Vec w = rng.next_gaussian_vec(dim);
    for (auto _ : state) benchmark::DoNotOptimize(pa_update(z, w));
}
BENCHMARK(BM_PaUpdate);

void BM_Divergence(benchmark::State& state) {
    Rng64 rng(5);
    ModelConfiguration models;
    for (int l = 0; l < state.range(0); ++l) models.push_back(rng.next_gaussian_vec(10));
    for (auto _ : state) benchmark::DoNotOptimize(divergence(models));
}
BENCHMARK(BM_Divergence)->Arg(8)->Arg(64);

void BM_ApplyDynamic(benchmark::State& state) {
    Rng64 rng(7);
    const std::size_t k = static_cast<std::size_t>(state.range(0));
    ModelConfiguration models;
    for (std::size_t l = 0; l < k; ++l) models.push_back(rng.next_gaussian_vec(10));
    const SyncState sync{Vec(10, 0.0), 1.0};
    std::vector<std::size_t> poll_order;
    for (std::size_t l = 0; l < k; ++l)
        if (check_local_condition(models[l], sync)) poll_order.push_back(l);
    for (auto _ : state) benchmark::DoNotOptimize(apply_dynamic(models, sync, poll_order));
}
BENCHMARK(BM_ApplyDynamic)->Arg(8)->Arg(64);

void BM_DynamicRun(benchmark::State& state) {
    RunConfig cfg;
    cfg.k = 8;
    cfg.rounds = static_cast<std::uint64_t>(state.range(0));
    cfg.protocol.kind = ProtocolKind::Dynamic;
    cfg.protocol.delta = 0.1;
    for (auto _ : state) benchmark::DoNotOptimize(run_distributed(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}
BENCHMARK(BM_DynamicRun)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
