#include <benchmark/benchmark.h>

#include "drplab/drp_engine.hpp"
#include "drplab/ltv_analysis.hpp"
#include "drplab/systems.hpp"

using namespace drp;

static void BM_IntegratePass(benchmark::State& state) {
    const TimeGrid grid(2.0, state.range(0));
    const DRPSystem sys = van_der_pol_drp(grid, tracking_example_damping());
    Rng rng(1);
    const Signal u = random_polynomial_signal(grid, 1, 0.05, rng);
    Vector chi0(2);
    chi0 << 0.05, 0.0;
    for (auto _ : state) {
        PassResult pass = integrate_pass(sys, chi0, u);
        benchmark::DoNotOptimize(pass.output);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegratePass)->RangeMultiplier(2)->Range(500, 8000)->Complexity();

static void BM_BuildLiftedG0(benchmark::State& state) {
    const TimeGrid grid(1.0, state.range(0));
    Rng rng(2);
    const auto quad = random_quadruple(grid, 2, 2, 0.7, rng);
    for (auto _ : state) {
        LiftedOperator G0 = build_lifted_G0(quad);
        benchmark::DoNotOptimize(G0.matrix);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildLiftedG0)->RangeMultiplier(2)->Range(50, 400)->Complexity();

static void BM_GelfandPowers(benchmark::State& state) {
    const TimeGrid grid(1.0, state.range(0));
    Rng rng(3);
    const LiftedOperator G0 = build_lifted_G0(random_quadruple(grid, 1, 2, 0.6, rng));
    for (auto _ : state) {
        auto roots = gelfand_estimate(G0, 40);
        benchmark::DoNotOptimize(roots);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GelfandPowers)->RangeMultiplier(2)->Range(50, 200)->Complexity();

static void BM_MultiPassRun(benchmark::State& state) {
    const TimeGrid grid(1.0, 500);
    Rng rng(4);
    const auto quad = random_quadruple(grid, 2, 2, 0.6, rng);
    const DRPSystem sys = make_ltv_system(quad);
    const BoundarySpec boundary{Signal::constant(grid, Vector::Constant(2, 1.0)),
                                VectorSequence::zero(2, state.range(0))};
    for (auto _ : state) {
        RunRecord rec = run_drp(sys, boundary, state.range(0));
        benchmark::DoNotOptimize(rec.output_norms);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MultiPassRun)->RangeMultiplier(2)->Range(8, 64)->Complexity();

BENCHMARK_MAIN();
