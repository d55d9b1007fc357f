// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "uplink/analytic.hpp"
#include "uplink/montecarlo.hpp"

using namespace uplink;

namespace {

const NetworkParams kParams(0.25, 4.0, 1.0, 1.0, 0.0);

void BM_Trials(benchmark::State& state, montecarlo::Mode mode, Execution execution) {
    auto config = montecarlo::SimConfig::defaults(0.25, mode, 1);
    config.n_trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(montecarlo::sinr_samples(kParams, config, execution));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CoverageCurve(benchmark::State& state, Execution execution) {
    const NetworkParams p(0.25, 3.25, 0.75, 1.0, 0.0);
    std::vector<double> db;
    for (int t = -10; t <= 20; t += 2) {
        db.push_back(t);
    }
    const auto model = analytic::ServingDistanceModel::rayleigh(0.25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::coverage_curve(p, db, model, QuadratureSpec{}, execution));
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Trials, true_ppp_serial, montecarlo::Mode::TruePpp, Execution::Serial)->Arg(256);
BENCHMARK_CAPTURE(BM_Trials, true_ppp_parallel, montecarlo::Mode::TruePpp, Execution::Parallel)->Arg(256);
BENCHMARK_CAPTURE(BM_Trials, iid_serial, montecarlo::Mode::IidRayleigh, Execution::Serial)->Arg(2048);
BENCHMARK_CAPTURE(BM_Trials, iid_parallel, montecarlo::Mode::IidRayleigh, Execution::Parallel)->Arg(2048);
BENCHMARK_CAPTURE(BM_Trials, hex_serial, montecarlo::Mode::HexGrid, Execution::Serial)->Arg(2048);
BENCHMARK_CAPTURE(BM_Trials, hex_parallel, montecarlo::Mode::HexGrid, Execution::Parallel)->Arg(2048);
BENCHMARK_CAPTURE(BM_CoverageCurve, serial, Execution::Serial);
BENCHMARK_CAPTURE(BM_CoverageCurve, parallel, Execution::Parallel);

BENCHMARK_MAIN();
