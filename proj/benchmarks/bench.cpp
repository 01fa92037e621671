#include <benchmark/benchmark.h>

#include <cmath>

#include "wgqed/closed_form.hpp"
#include "wgqed/realspace.hpp"
#include "wgqed/sweep.hpp"

using namespace wgqed;

namespace {

const TwoAtomParams kPoint{1.1, 2.3, 1.0, -0.8, 0.2, 0.7};

void BM_ClosedForm(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(amplitudes_full(kPoint));
}
BENCHMARK(BM_ClosedForm);

void BM_EigenDecomposition(benchmark::State& state)
{
    const TwoAtomParams p{1.1, 2.3, 1.0, -0.8, 0.0, 0.7};
    for (auto _ : state) benchmark::DoNotOptimize(amplitudes_eigen(p));
}
BENCHMARK(BM_EigenDecomposition);

void BM_RealSpaceTwoAtom(benchmark::State& state)
{
    const auto sys = two_atom_to_system(kPoint, 1e6, PhaseMode::FixedPhase,
                                        FrequencyUnits::DetuningFromReference);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve({sys, 0, Direction::Rightward, kPoint.detuning}));
}
BENCHMARK(BM_RealSpaceTwoAtom);

void BM_ThreeQubitSolve(benchmark::State& state)
{
    const auto sys = fig5_preset(50.0, 0.0, 0.1, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve({sys, 0, Direction::Rightward, 0.0}));
}
BENCHMARK(BM_ThreeQubitSolve);

void BM_SpectrumSweep(benchmark::State& state)
{
    const auto spec = figure_preset("fig3a");
    for (auto _ : state) {
        auto table = run_sweep(spec);
        benchmark::DoNotOptimize(table.rows.data());
    }
    state.SetItemsProcessed(state.iterations() * 201);
}
BENCHMARK(BM_SpectrumSweep);

void BM_PhaseMapRow(benchmark::State& state)
{
    // one row of the 201x201 phase map
    for (auto _ : state) {
        for (int k = 0; k < 201; ++k) {
            const double phi = 2.0 * M_PI * k / 200.0;
            benchmark::DoNotOptimize(amplitudes_full(
                {M_PI / 3, phi, 1.0, degeneracy_coupling(M_PI / 3, phi, 1.0), 0.0, 0.0}));
        }
    }
    state.SetItemsProcessed(state.iterations() * 201);
}
BENCHMARK(BM_PhaseMapRow);

}  // namespace

BENCHMARK_MAIN();
