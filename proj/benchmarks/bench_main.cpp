#include <benchmark/benchmark.h>

#include "pathsource/adaptive.hpp"
#include "pathsource/diffusion.hpp"
#include "pathsource/map_oracle.hpp"
#include "pathsource/nonadaptive.hpp"

namespace {

using namespace pathsource;

void bm_sample_instance(benchmark::State& state) {
    const Node n = state.range(0);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        auto inst = sample_instance(n, 1.0, WeightDist::gaussian, {42, stream++});
        benchmark::DoNotOptimize(inst.prefix.data());
    }
    state.SetItemsProcessed(state.iterations() * (n - 1));
}
BENCHMARK(bm_sample_instance)->Arg(1000)->Arg(100000)->Arg(1000000);

void bm_nonadaptive_estimate(benchmark::State& state) {
    const Node n = state.range(0);
    const auto inst = sample_instance(n, 0.25, WeightDist::gaussian, {7, 0});
    const auto plan = build_plan(n, 0.25, 0.1, Model::S2);
    std::vector<double> answers;
    answers.reserve(plan.query_nodes.size());
    for (Node q : plan.query_nodes) answers.push_back(answer(inst, q));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_s2(plan, answers));
    }
}
BENCHMARK(bm_nonadaptive_estimate)->Arg(10000)->Arg(1000000);

void bm_adaptive_search(benchmark::State& state) {
    const Node n = state.range(0);
    AdaptiveConfig cfg;
    cfg.c_mode = CMode::tuned;
    cfg.c_value = 2.0;
    std::uint64_t stream = 0;
    for (auto _ : state) {
        const auto inst = sample_instance(n, 1.0, WeightDist::gaussian, {42, stream++});
        const auto res = search_s2([&](Node q) { return answer(inst, q); }, n, 1.0, cfg);
        benchmark::DoNotOptimize(res.estimate);
    }
}
BENCHMARK(bm_adaptive_search)->Arg(10000)->Arg(1000000);

void bm_posterior(benchmark::State& state) {
    const Node width = state.range(0);
    BracketObservation obs{1, 1 + width, 0.4 * width, 0.6 * width, 1.0};
    for (auto _ : state) {
        auto post = posterior(obs);
        benchmark::DoNotOptimize(post.probs.data());
    }
}
BENCHMARK(bm_posterior)->Arg(100)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
