#include <benchmark/benchmark.h>

#include "squish/code_table.hpp"
#include "squish/cover.hpp"
#include "squish/generate.hpp"
#include "squish/search.hpp"

namespace {

using namespace squish;

const GeneratedData& plant_data() {
    static GeneratedData data = [] {
        GeneratorSpec spec;
        spec.kind = GeneratorSpec::Kind::kPlant;
        spec.seed = 17;
        return gen_plant(spec);
    }();
    return data;
}

void BM_FindWindows(benchmark::State& state) {
    const auto& data = plant_data();
    InvertedIndex idx(data.db);
    const Pattern& target = data.targets[0];
    for (auto _ : state) {
        BudgetState budget;
        auto ws = find_windows(data.db, idx, target, budget);
        benchmark::DoNotOptimize(ws);
    }
}
BENCHMARK(BM_FindWindows);

void BM_GreedyCoverChain(benchmark::State& state) {
    const auto& data = plant_data();
    InvertedIndex idx(data.db);
    const std::size_t k = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<Window>> cands;
    for (std::size_t i = 0; i < k && i < data.targets.size(); ++i) {
        cands.push_back(find_windows(data.db, idx, data.targets[i]));
    }
    for (auto _ : state) {
        Cover cover(data.db.size());
        for (std::size_t i = 0; i < cands.size(); ++i) {
            cover = greedy_cover(std::move(cover), cands[i], static_cast<std::int32_t>(i),
                                 data.targets[i], data.db, CoverMode::kInterleaved);
        }
        benchmark::DoNotOptimize(cover);
    }
}
BENCHMARK(BM_GreedyCoverChain)->Arg(2)->Arg(5)->Arg(10);

void BM_TotalLength(benchmark::State& state) {
    const auto& data = plant_data();
    InvertedIndex idx(data.db);
    Cover cover(data.db.size());
    std::vector<Pattern> pats;
    for (std::size_t i = 0; i < data.targets.size(); ++i) {
        auto cand = find_windows(data.db, idx, data.targets[i]);
        cover = greedy_cover(std::move(cover), cand, static_cast<std::int32_t>(i),
                             data.targets[i], data.db, CoverMode::kInterleaved);
        pats.push_back(data.targets[i]);
    }
    CodeTable ct = cover_to_stats(pats, cover, data.db);
    for (auto _ : state) {
        benchmark::DoNotOptimize(total_length(data.db, ct));
    }
}
BENCHMARK(BM_TotalLength);

void BM_EstimateBatch(benchmark::State& state) {
    const auto& data = plant_data();
    SearchConfig config;
    config.mode = MiningMode::kInterleave;
    config.threads = 1;
    Miner miner(data.db, config);
    for (auto _ : state) {
        auto batch = miner.estimate_all();
        benchmark::DoNotOptimize(batch);
    }
}
BENCHMARK(BM_EstimateBatch);

void BM_MinePlant(benchmark::State& state) {
    const auto& data = plant_data();
    SearchConfig config;
    config.mode = MiningMode::kInterleave;
    for (auto _ : state) {
        auto result = squish_mine(data.db, config);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_MinePlant)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
