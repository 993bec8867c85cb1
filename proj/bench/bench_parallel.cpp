#include <benchmark/benchmark.h>

#include "qeuclid/batch.hpp"

using namespace qeuclid;

namespace {

const Algebra& alg() {
    static const Algebra a;
    return a;
}

void normalize_words(benchmark::State& state, Exec exec) {
    const auto words = random_words(1, static_cast<std::size_t>(state.range(0)), 6);
    for (auto _ : state) benchmark::DoNotOptimize(normalize_batch(alg(), words, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void random_sweep(benchmark::State& state, Exec exec) {
    const auto triples = random_triples(2, static_cast<std::size_t>(state.range(0)), 6);
    for (auto _ : state) benchmark::DoNotOptimize(associativity_sweep(alg(), triples, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void critical_pairs(benchmark::State& state, Exec exec) {
    for (auto _ : state) benchmark::DoNotOptimize(generator_triple_sweep(alg(), exec));
    state.SetItemsProcessed(state.iterations() * 4096);
}

}  // namespace

BENCHMARK_CAPTURE(normalize_words, serial, Exec::serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(normalize_words, parallel, Exec::parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(random_sweep, serial, Exec::serial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(random_sweep, parallel, Exec::parallel)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(critical_pairs, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(critical_pairs, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
