#include <benchmark/benchmark.h>

#include "semihilbert/eig.hpp"
#include "semihilbert/generators.hpp"
#include "semihilbert/geometry.hpp"
#include "semihilbert/numrange.hpp"

using namespace semihilbert;

namespace {

ComplexMatrix hermitian_sample(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    const ComplexMatrix g = random_ginibre(n, rng);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

void HermEigBench(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix h = hermitian_sample(n, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(herm_eig(h));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(HermEigBench)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void GeneralEigBench(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(43);
    const ComplexMatrix m = random_ginibre(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(general_eig(m));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(GeneralEigBench)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void RangeSweepBench(benchmark::State& state) {
    Rng rng(44);
    const SpacePtr space = random_space(8, 6, rng);
    const SemiHilbertOperator op = random_a_normal(space, rng);
    const auto angles = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(numerical_range(op, angles));
    }
}
BENCHMARK(RangeSweepBench)->Arg(256)->Arg(1024)->Arg(2048);

void HullBench(benchmark::State& state) {
    Rng rng(45);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<Complex> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts) p = Complex(coord(rng), coord(rng));
    for (auto _ : state) {
        auto copy = pts;
        benchmark::DoNotOptimize(convex_hull(std::move(copy)));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(HullBench)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

} // namespace

BENCHMARK_MAIN();
