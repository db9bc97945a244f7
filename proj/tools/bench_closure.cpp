// Compares the serial reference closure against the packed OpenMP kernel on
// growing components of the three-state benchmark automaton.

#include <benchmark/benchmark.h>

#include "mealy/closure.hpp"

namespace {

mealy::MealyAutomaton bench_automaton() {
    // delta_0: a->c, b->a, c->b; delta_1: a->c, b->b, c->a;
    // rho_a swaps, rho_b = rho_c = id.  Components grow quickly with the
    // level, which is what the packed kernel is for.
    return mealy::MealyAutomaton({"a", "b", "c"}, {"0", "1"},
                                 {2, 2, 0, 1, 1, 0},   // delta[x][i]
                                 {1, 0, 0, 1, 0, 1});  // rho[x][i]
}

mealy::StateWord seed_word(int len) {
    mealy::StateWord w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint8_t>(i % 3));
    return w;
}

void closure_serial(benchmark::State& state) {
    auto a = bench_automaton();
    auto w = seed_word(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto n = mealy::orbit_closure_size(a, w, mealy::kDefaultComponentCap,
                                           mealy::ClosurePolicy::Serial);
        benchmark::DoNotOptimize(n);
    }
}

void closure_packed(benchmark::State& state) {
    auto a = bench_automaton();
    auto w = seed_word(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto n = mealy::orbit_closure_size(a, w, mealy::kDefaultComponentCap,
                                           mealy::ClosurePolicy::Parallel);
        benchmark::DoNotOptimize(n);
    }
}

}  // namespace

BENCHMARK(closure_serial)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(closure_packed)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
