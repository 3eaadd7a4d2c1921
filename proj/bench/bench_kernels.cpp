// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "tdicke/basis.hpp"
#include "tdicke/dynamics.hpp"
#include "tdicke/kernel.hpp"

using namespace tdicke;

namespace {

Ensemble sphere_of(long n) {
    const Real lambda0 = 2.0 * std::numbers::pi;
    const Real radius = 2.5 * lambda0;
    const Real spacing = radius / std::cbrt(static_cast<Real>(n) * 3.0 / (4.0 * std::numbers::pi) * 1.1);
    return build_sphere_lattice(radius, spacing, Vec3(1, 0, 0), n);
}

void BM_Generator(benchmark::State& state) {
    const Ensemble e = sphere_of(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_generator(e, KernelKind::exp, 1.0).entries.data());
}

void BM_GeneratorSerial(benchmark::State& state) {
    const Ensemble e = sphere_of(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::build_generator(e, KernelKind::exp, 1.0).entries.data());
}

void BM_TdDirect(benchmark::State& state) {
    const Ensemble e = sphere_of(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_td_direct(e, KernelKind::exp, 1.0).entries.data());
}

void BM_TdConjugation(benchmark::State& state) {
    const Ensemble e = sphere_of(state.range(0));
    const GeneratorMatrix m = build_generator(e, KernelKind::exp, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(transform_generator(build_transform(e), m).entries.data());
}

void BM_Rk4(benchmark::State& state) {
    const Ensemble e = sphere_of(state.range(0));
    const GeneratorMatrix m = build_generator(e, KernelKind::exp, 1.0);
    const AmplitudeState b0 = plus_state(e);
    for (auto _ : state) benchmark::DoNotOptimize(rk4_propagate(m, b0, 0.01, 1.0, 10).amplitudes.data());
}

void BM_Rk4Serial(benchmark::State& state) {
    const Ensemble e = sphere_of(state.range(0));
    const GeneratorMatrix m = build_generator(e, KernelKind::exp, 1.0);
    const AmplitudeState b0 = plus_state(e);
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::rk4_propagate(m, b0, 0.01, 1.0, 10).amplitudes.data());
}

} // namespace

BENCHMARK(BM_Generator)->Arg(121)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeneratorSerial)->Arg(121)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TdDirect)->Arg(121)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TdConjugation)->Arg(121)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4)->Arg(121)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4Serial)->Arg(121)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
