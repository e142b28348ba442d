#include <benchmark/benchmark.h>

#include "mcss/builders.hpp"
#include "mcss/oracle.hpp"
#include "mcss/pages.hpp"

using namespace mcss;

namespace {

Ring ring_of(int id)
{
    switch (id) {
    case 0: return Ring::prime_field(2);
    case 1: return Ring::rationals();
    default: return Ring::integers();
    }
}

void BM_AllPages(benchmark::State& state)
{
    const Ring ring = ring_of(static_cast<int>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Multicomplex c = random_mcx({seed++ % 20, 6, 6, 4, 4, ring, true});
        for (int r = 0; r <= stabilization_bound(c); ++r)
            benchmark::DoNotOptimize(full_page(c, r));
    }
    state.SetLabel(ring.name());
}
BENCHMARK(BM_AllPages)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Compare(benchmark::State& state)
{
    const Ring ring = ring_of(static_cast<int>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Multicomplex c = random_mcx({seed++ % 20, 6, 6, 4, 4, ring, true});
        benchmark::DoNotOptimize(compare(c));
    }
    state.SetLabel(ring.name());
}
BENCHMARK(BM_Compare)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_WallPages(benchmark::State& state)
{
    Multicomplex w = wall({3, 2, 2, static_cast<int>(state.range(0))});
    for (auto _ : state)
        for (int r = 0; r <= 3; ++r)
            benchmark::DoNotOptimize(full_page(w, r));
}
BENCHMARK(BM_WallPages)->Arg(6)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_TotHomology(benchmark::State& state)
{
    TotalComplex t = totalize(wall({3, 2, 2, static_cast<int>(state.range(0))}));
    for (auto _ : state)
        for (int n = 0; n <= 4; ++n)
            benchmark::DoNotOptimize(homology(t, n));
}
BENCHMARK(BM_TotHomology)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

// The distro ships benchmark_main only as LTO bytecode, so provide main here.
BENCHMARK_MAIN();
