// Serial vs OpenMP kernels. Set AFC_SIM_THREADS or OMP_NUM_THREADS to pick
// the team size of the *_omp variants.

#include <array>
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "afc/common/rng.hpp"
#include "afc/echo/oracle.hpp"
#include "afc/holeburn/burn.hpp"
#include "afc/holeburn/kernels.hpp"
#include "afc/spectral/hyperfine.hpp"

using namespace afc;
using namespace afc::holeburn;

namespace {

struct StepFixture {
    BurnComb comb;
    std::vector<double> weights;
    kernels::StepInputs in;
    std::vector<Triple> pops;

    explicit StepFixture(int n_teeth_half) {
        comb.n_teeth_half = n_teeth_half;
        weights = comb.tooth_weights();
        const auto s = spectral::pr_yso_scheme();
        for (int g = 0; g < 3; ++g)
            for (int e = 0; e < 3; ++e) {
                in.offsets[3 * g + e] = s.offset(g, e);
                in.strengths[3 * g + e] = s.strength[g][e];
                in.branching[3 * e + g] = s.branching(e, g);
            }
        in.n_teeth_half = n_teeth_half;
        in.weights = weights;
        in.pump_rate = 1000.0;
        in.dt_s = 5e-3;
        const auto grid = make_class_grid(comb, JitterModel{}, 1.0);
        in.class_first_hz = grid.first();
        in.class_spacing_hz = grid.spacing();
        pops.assign(grid.size(), Triple{1.0 / 3, 1.0 / 3, 1.0 / 3});
    }
};

template <double (*Step)(const kernels::StepInputs&, std::span<Triple>)>
void BM_burn_step(benchmark::State& state) {
    StepFixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto p = f.pops;
        benchmark::DoNotOptimize(Step(f.in, p));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.pops.size()));
}

template <void (*Dev)(const kernels::DeviationInputs&, const FrequencyGrid&, std::span<double>)>
void BM_deviation_direct(benchmark::State& state) {
    const auto classes = spectral::grid_from_spacing(-50e6, 0.5e6, 201);
    std::vector<std::array<double, 3>> dev(classes.size());
    Rng rng(5);
    for (auto& d : dev) d = {rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5};
    kernels::DeviationInputs in;
    in.class_first_hz = classes.first();
    in.class_spacing_hz = classes.spacing();
    in.class_deviation = dev;
    const auto s = spectral::pr_yso_scheme();
    for (int g = 0; g < 3; ++g)
        for (int e = 0; e < 3; ++e) {
            in.offsets[3 * g + e] = s.offset(g, e);
            in.strengths[3 * g + e] = s.strength[g][e];
        }
    const FrequencyGrid target(0.0, 200e6, static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(target.size());
    for (auto _ : state) {
        Dev(in, target, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <void (*Sum)(std::span<const double>, std::span<const echo::cplx>, std::span<const double>,
                      std::span<double>)>
void BM_atom_sum(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> det(n), t(4096), out(t.size());
    std::vector<echo::cplx> coeff(n);
    Rng rng(11);
    for (std::size_t j = 0; j < n; ++j) {
        det[j] = (rng.uniform() - 0.5) * 4e9;
        coeff[j] = {rng.uniform(), rng.uniform()};
    }
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1e-11 * static_cast<double>(i);
    for (auto _ : state) {
        Sum(det, coeff, t, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n * t.size()));
}

}  // namespace

BENCHMARK(BM_burn_step<kernels::burn_step_serial>)->Name("burn_step/serial")->Arg(8)->Arg(60);
BENCHMARK(BM_burn_step<kernels::burn_step_omp>)->Name("burn_step/omp")->Arg(8)->Arg(60);
BENCHMARK(BM_deviation_direct<kernels::deviation_direct_serial>)->Name("deviation_direct/serial")->Arg(1601)->Arg(6401);
BENCHMARK(BM_deviation_direct<kernels::deviation_direct_omp>)->Name("deviation_direct/omp")->Arg(1601)->Arg(6401);
BENCHMARK(BM_atom_sum<echo::kernels::atom_sum_serial>)->Name("atom_sum/serial")->Arg(500)->Arg(2000);
BENCHMARK(BM_atom_sum<echo::kernels::atom_sum_omp>)->Name("atom_sum/omp")->Arg(500)->Arg(2000);

BENCHMARK_MAIN();
