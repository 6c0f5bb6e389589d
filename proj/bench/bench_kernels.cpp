// Serial references against the OpenMP kernels, plus the cost of scoring a
// proposal incrementally versus recomputing strength from scratch.

#include "litclust/cluster.hpp"
#include "litclust/metrics.hpp"
#include "litclust/parallel.hpp"
#include "litclust/synthetic.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <tuple>

using namespace litclust;

namespace {

const Blobs& blobs(std::size_t k, std::size_t s, std::size_t dim)
{
    static std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Blobs> cache;
    auto key = std::make_tuple(k, s, dim);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, make_blobs(k, s, dim, 1.0, 1)).first;
    return it->second;
}

SearchConfig search_config()
{
    SearchConfig cfg;
    cfg.seed = 3;
    cfg.restarts = 16;
    return cfg;
}

void BM_Distances_Serial(benchmark::State& state)
{
    const auto& b = blobs(20, 20, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::pairwise_distances(b.set));
}

void BM_Distances_OpenMP(benchmark::State& state)
{
    const auto& b = blobs(20, 20, static_cast<std::size_t>(state.range(0)));
    set_threads(static_cast<int>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pairwise_distances(b.set));
    set_threads(0);
}

void BM_SwapSearch_Serial(benchmark::State& state)
{
    const auto& b = blobs(11, 5, 40);
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::swap_search(b.set, 11, 5, search_config()));
}

void BM_SwapSearch_OpenMP(benchmark::State& state)
{
    const auto& b = blobs(11, 5, 40);
    set_threads(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(swap_search(b.set, 11, 5, search_config()));
    set_threads(0);
}

void BM_PurityBaseline_Serial(benchmark::State& state)
{
    const auto& b = blobs(11, 5, 11);
    const GoldPartition gold(b.set.ids(), b.labels);
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::random_purity_baseline(gold, 10000, 1));
}

void BM_PurityBaseline_OpenMP(benchmark::State& state)
{
    const auto& b = blobs(11, 5, 11);
    const GoldPartition gold(b.set.ids(), b.labels);
    set_threads(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(random_purity_baseline(gold, 10000, 1));
    set_threads(0);
}

// One full O(N^2) strength evaluation, the per-proposal cost without the cache.
void BM_Strength_FullRecompute(benchmark::State& state)
{
    const auto& b = blobs(11, 5, 40);
    const auto dist = pairwise_distances(b.set);
    const auto p = random_partition(55, 11, 5, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(cluster_strength(dist, p));
}

// One restart; items processed counts proposals, so the per-item time is the
// incremental per-proposal cost.
void BM_Strength_Incremental(benchmark::State& state)
{
    const auto& b = blobs(11, 5, 40);
    const auto dist = pairwise_distances(b.set);
    const auto cfg = search_config();
    std::size_t proposals = 0;
    for (auto _ : state) {
        std::vector<std::size_t> assignment;
        proposals += run_restart(dist, 11, 5, cfg, 0, assignment).proposals_evaluated;
        benchmark::DoNotOptimize(assignment.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(proposals));
}

} // namespace

BENCHMARK(BM_Distances_Serial)->Arg(50)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Distances_OpenMP)
    ->ArgsProduct({{50, 1024}, {1, 2, 4}})
    ->Unit(benchmark::kMicrosecond)
    ->UseRealTime();
BENCHMARK(BM_SwapSearch_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SwapSearch_OpenMP)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PurityBaseline_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PurityBaseline_OpenMP)
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_Strength_FullRecompute)->Unit(benchmark::kNanosecond);
BENCHMARK(BM_Strength_Incremental)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
