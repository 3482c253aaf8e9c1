// Microbenchmarks for the hot paths: the Cauchy transform, one operator
// application, the Neumann solve, and a full per-x reconstruction.
#include <benchmark/benchmark.h>

#include "dbar/cauchy.hpp"
#include "dbar/dbar_solver.hpp"
#include "dbar/reconstruction.hpp"
#include "dbar/spectral.hpp"

using namespace dbar;

namespace {

const SpectralData& fixture() {
    static SpectralData d = SpectralData::annulus_bump({0.4, 0.0}, {0.3, 0.0});
    return d;
}

void BM_CauchyTransform(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const QuadratureGrid grid = build_disk_grid({0, 0}, 1.0, n, n);
    const ScalarField f = ScalarField::sample(
        grid, [](Complex z) { return std::exp(-3.0 * std::norm(z)) * (z + 0.2); });
    const std::vector<Complex> ks{{0.21, 0.17}, {-0.4, 0.33}, {0.05, -0.6}, {1.3, 0.4}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cauchy_transform(f, ks));
    }
}
BENCHMARK(BM_CauchyTransform)->Arg(64)->Arg(128)->Arg(256);

void BM_ApplyRTCGrid(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComponentGrids grids = ComponentGrids::build(n, n);
    const PsiField4 psi = PsiField4::identity(grids);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_RTC_on_grid(psi, fixture(), 0.5));
    }
}
BENCHMARK(BM_ApplyRTCGrid)->Arg(16)->Arg(24)->Arg(32);

void BM_SolvePsi(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComponentGrids grids = ComponentGrids::build(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_psi(fixture(), 0.5, grids, 1e-10, 60));
    }
}
BENCHMARK(BM_SolvePsi)->Arg(16)->Arg(24);

void BM_ReconstructOneX(benchmark::State& state) {
    const SolverConfig cfg{16, 16, 1e-10, 60};
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct_potentials(fixture(), {0.5}, cfg));
    }
}
BENCHMARK(BM_ReconstructOneX);

}  // namespace

BENCHMARK_MAIN();
