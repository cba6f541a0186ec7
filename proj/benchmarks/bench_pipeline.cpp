#include <benchmark/benchmark.h>

#include <cmath>

#include "pqclone/discrimination.hpp"
#include "pqclone/feasibility.hpp"
#include "pqclone/synthesis.hpp"

using namespace pqclone;

namespace {

StateSet four_state_set() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r6 = 1.0 / std::sqrt(6.0);
    return load_states(3, {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}},
                           {Complex{r2, 0}, Complex{r2, 0}, Complex{0, 0}},
                           {Complex{r2, 0}, Complex{0, 0}, Complex{r2, 0}},
                           {Complex{2 * r6, 0}, Complex{r6, 0}, Complex{r6, 0}}});
}

StateSet two_state_set(double s) {
    return load_states(2, {{Complex{1, 0}, Complex{0, 0}},
                           {Complex{s, 0}, Complex{std::sqrt(1.0 - s * s), 0}}});
}

Partition partition_of(const StateSet& set) {
    return clonable_partition(set, maximal_independent_subset(set));
}

}  // namespace

static void BM_Partition(benchmark::State& state) {
    const StateSet set = four_state_set();
    for (auto _ : state) {
        benchmark::DoNotOptimize(clonable_partition(set, maximal_independent_subset(set)));
    }
}
BENCHMARK(BM_Partition);

static void BM_UniformBisection(benchmark::State& state) {
    const StateSet set = four_state_set();
    const Partition part = partition_of(set);
    const PGram pg = PGram::identity(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_uniform_efficiency(set, part, pg, state.range(0)));
    }
}
BENCHMARK(BM_UniformBisection)->Arg(2)->Arg(10)->Arg(20);

static void BM_PGramSearch(benchmark::State& state) {
    const StateSet pair = two_state_set(1.0 / std::sqrt(2.0));
    const Partition part = partition_of(pair);
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_pgram(pair, part, 2, PGramMode::search));
    }
}
BENCHMARK(BM_PGramSearch);

static void BM_BuildCloningMap(benchmark::State& state) {
    const StateSet set = four_state_set();
    const Partition part = partition_of(set);
    const EfficiencySpec gamma = EfficiencySpec::uniform(part, 1.0 / 3.0, state.range(0));
    const PGram pg = PGram::identity(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_cloning_map(set, part, gamma, pg));
    }
}
BENCHMARK(BM_BuildCloningMap)->Arg(2)->Arg(3);

static void BM_SimulateCloning(benchmark::State& state) {
    const StateSet set = four_state_set();
    const Partition part = partition_of(set);
    const CloningMap map =
        build_cloning_map(set, part, EfficiencySpec::uniform(part, 1.0 / 3.0, 2),
                          PGram::identity(3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_cloning(map, set.state(3)));
    }
}
BENCHMARK(BM_SimulateCloning);

static void BM_DiscriminationPipeline(benchmark::State& state) {
    const StateSet set = four_state_set();
    const Partition part = partition_of(set);
    for (auto _ : state) {
        const DiscriminationOptimum opt = disc_max_uniform(set, part);
        std::vector<double> gamma(part.m(), 0.0);
        for (std::size_t j = 0; j < part.l(); ++j) gamma[j] = 0.9 * opt.t_star;
        benchmark::DoNotOptimize(build_discrimination_map(set, part, gamma));
    }
}
BENCHMARK(BM_DiscriminationPipeline);

BENCHMARK_MAIN();
