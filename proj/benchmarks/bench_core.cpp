#include <benchmark/benchmark.h>

#include "mhq/analysis.hpp"
#include "mhq/explore.hpp"
#include "mhq/propagate.hpp"
#include "mhq/random.hpp"
#include "mhq/schemes.hpp"

using namespace mhq;

namespace {

Operator random_hermitian(Rng &rng) {
    Operator m(3);
    for (std::size_t r = 0; r < 3; ++r) {
        m(r, r) = rng.uniform(-1.0, 1.0);
        for (std::size_t c = r + 1; c < 3; ++c) {
            m(r, c) = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

void BM_HermEig(benchmark::State &state) {
    Rng rng(1);
    const Operator m = random_hermitian(rng);
    for (auto _ : state) benchmark::DoNotOptimize(herm_eig(m));
}
BENCHMARK(BM_HermEig);

void BM_ClosedFormPropagator(benchmark::State &state) {
    const ClosedFormPropagator prop(experimental_drive());
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-4;
        benchmark::DoNotOptimize(prop.at(t));
    }
}
BENCHMARK(BM_ClosedFormPropagator);

void BM_SteppedPropagator(benchmark::State &state) {
    const DriveParams p = experimental_drive();
    const auto steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(propagator_stepped(0.1, p, steps));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SteppedPropagator)->Arg(1000)->Arg(10000);

void BM_KdqTable(benchmark::State &state) {
    const DriveParams p = experimental_drive();
    const EnergyBasis b0 = energy_basis(0.0, p);
    const Operator rho = initial_state(experimental_state(), b0);
    const ClosedFormPropagator prop(p);
    for (auto _ : state) benchmark::DoNotOptimize(kdq_direct(rho, make_slice(0.1, prop), b0));
}
BENCHMARK(BM_KdqTable);

void BM_SchemeReconstruction(benchmark::State &state) {
    const DriveParams p = experimental_drive();
    const EnergyBasis b0 = energy_basis(0.0, p);
    const StateVector psi = initial_state_vector(experimental_state(), b0);
    const ClosedFormPropagator prop(p);
    for (auto _ : state) benchmark::DoNotOptimize(mhq_reconstruct(scheme_tables(psi, make_slice(0.1, prop), b0)));
}
BENCHMARK(BM_SchemeReconstruction);

void BM_WindowExtrema(benchmark::State &state) {
    const DriveParams p = experimental_drive();
    const StateVector psi = initial_state_vector(experimental_state(), energy_basis(0.0, p));
    for (auto _ : state) benchmark::DoNotOptimize(window_extrema(p, psi, 200));
}
BENCHMARK(BM_WindowExtrema);

}  // namespace

BENCHMARK_MAIN();
