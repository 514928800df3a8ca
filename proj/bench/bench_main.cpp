// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "plumbing/catalog.hpp"
#include "plumbing/contraction.hpp"
#include "plumbing/sweeps.hpp"

using namespace plumbing;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_CatalogVerify(benchmark::State& state) {
    Bounds b;
    b.pool = admissible_twigs(8);
    for (auto _ : state) benchmark::DoNotOptimize(verify(Catalog::builtin(), b, mode(state)));
}

void BM_FujitaSweep(benchmark::State& state) {
    auto pool = admissible_twigs(20);
    for (auto _ : state) benchmark::DoNotOptimize(fujita_sweep(pool, mode(state)));
}

void BM_FujitaPrimeSweep(benchmark::State& state) {
    auto pool = admissible_twigs(20);
    for (auto _ : state) benchmark::DoNotOptimize(fujita_prime_sweep(pool, {2, 3}, mode(state)));
}

void BM_LemmaSweep(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lemma_sweep(1, 1000, mode(state)));
}

// A long chain with many (-1)-curves, so the first-move fan-out is wide.
void BM_ContractsTo(benchmark::State& state) {
    Twig a{2, 3, 2, 4, 2};
    Twig chain = concat({a, {1}, adjoint(a), {1, 2, 1, 2, 1}});
    auto g = path_graph(chain);
    for (auto _ : state) benchmark::DoNotOptimize(contracts_to(g, Twig{0}, kDefaultBudget, mode(state)));
}

} // namespace

BENCHMARK(BM_CatalogVerify)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FujitaSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FujitaPrimeSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmaSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContractsTo)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
