#include <benchmark/benchmark.h>
#include <omp.h>

#include "bergman/operators.hpp"

using namespace bergman;

namespace {

const KernelSpec& kernel() {
    static const KernelSpec k = [] {
        SymbolU u;
        u.coeffs = {1.0, cd(0.3, -0.2), cd(0, 0.1)};
        u.nu = 0.7;
        return commutator_kernel(u);
    }();
    return k;
}

void BM_kernel_parallel(benchmark::State& state) {
    const BasisSet b = build_basis(0.5, int(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_kernel(kernel(), b).entries.data());
    state.counters["dim"] = b.dim();
    state.counters["threads"] = omp_get_max_threads();
}

void BM_kernel_serial(benchmark::State& state) {
    const BasisSet b = build_basis(0.5, int(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_kernel_serial(kernel(), b).entries.data());
    state.counters["dim"] = b.dim();
}

}  // namespace

BENCHMARK(BM_kernel_parallel)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_serial)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
