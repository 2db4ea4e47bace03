// Serial reference kernels against their OpenMP counterparts.
// Thread count follows OMP_NUM_THREADS / SSH_EMERGENCE_THREADS.

#include <benchmark/benchmark.h>

#include "sshe/bloch.hpp"
#include "sshe/homotopy.hpp"
#include "sshe/parallel.hpp"
#include "sshe/tight_binding.hpp"
#include "sshe/tridiagonal.hpp"

namespace {

sshe::HomotopyConfig scan_config(benchmark::State& state) {
  sshe::HomotopyConfig cfg = sshe::reference_config();
  cfg.n_eps = static_cast<int>(state.range(0));
  return cfg;
}

void BM_GapScanSerial(benchmark::State& state) {
  const auto cfg = scan_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(sshe::serial::gap_scan(cfg));
}

void BM_GapScanOpenMP(benchmark::State& state) {
  const auto cfg = scan_config(state);
  for (auto _ : state) benchmark::DoNotOptimize(sshe::gap_scan(cfg));
}

const sshe::FiniteVolumeModel& model() {
  static const sshe::FiniteVolumeModel m(sshe::dimerized_crystal(20.0, 0.5, 0.1, 1.0 / 15.0), 8, 2048);
  return m;
}

void BM_EigenvaluesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sshe::serial::eigenvalues(model().matrix(), 0, 16));
}

void BM_EigenvaluesOpenMP(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sshe::eigenvalues(model().matrix(), 0, 16));
}

const sshe::CrystalSpec kSpec{10.0, 0.5, 0.5 + 1.0 / 150.0, 0.1, 0.1};

void BM_DispersionSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sshe::serial::dispersion_curve(kSpec, 2, static_cast<int>(state.range(0))));
}

void BM_DispersionOpenMP(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sshe::dispersion_curve(kSpec, 2, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_GapScanSerial)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapScanOpenMP)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenvaluesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenvaluesOpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DispersionSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DispersionOpenMP)->Arg(256)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  sshe::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
