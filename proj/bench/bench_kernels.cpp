#include <benchmark/benchmark.h>

#include "paracool/open_system.hpp"
#include "paracool/protocol.hpp"

namespace {

paracool::TrajectoryConfig bench_config() {
    paracool::TrajectoryConfig cfg;
    cfg.n_cycles = 16;
    cfg.initial.value = 80.0;
    cfg.phase_noise_sigma = 0.05;
    cfg.seed = 7;
    return cfg;
}

void BM_EnsembleSerial(benchmark::State &state) {
    auto cfg = bench_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(paracool::run_ensemble_serial(cfg, static_cast<std::size_t>(state.range(0))));
    }
}

void BM_EnsembleOpenMP(benchmark::State &state) {
    auto cfg = bench_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(paracool::run_ensemble(cfg, static_cast<std::size_t>(state.range(0)), 0));
    }
}

void BM_DissipativeSerial(benchmark::State &state) {
    auto cfg = bench_config();
    paracool::BathParams bath{0.001, paracool::bath_occupation(0.5, 10.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            paracool::run_dissipative_protocol_serial(cfg, bath, static_cast<std::size_t>(state.range(0))));
    }
}

void BM_DissipativeOpenMP(benchmark::State &state) {
    auto cfg = bench_config();
    paracool::BathParams bath{0.001, paracool::bath_occupation(0.5, 10.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            paracool::run_dissipative_protocol(cfg, bath, static_cast<std::size_t>(state.range(0)), 0));
    }
}

}  // namespace

BENCHMARK(BM_EnsembleSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleOpenMP)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DissipativeSerial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DissipativeOpenMP)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
