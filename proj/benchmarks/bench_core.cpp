#include <benchmark/benchmark.h>

#include "mzm/braid.hpp"
#include "mzm/kitaev.hpp"
#include "mzm/pauli.hpp"
#include "mzm/resilience.hpp"
#include "mzm/tomography.hpp"

using namespace mzm;

static void BM_ZeroModeResiduals(benchmark::State& state) {
  const OperatorSum h = build_hamiltonian();
  for (auto _ : state) benchmark::DoNotOptimize(zero_mode_residuals(h));
}
BENCHMARK(BM_ZeroModeResiduals);

static void BM_ComposeCnotWord(benchmark::State& state) {
  const BraidWord word = cnot_word();
  for (auto _ : state) benchmark::DoNotOptimize(compose_braid(word));
}
BENCHMARK(BM_ComposeCnotWord);

static void BM_RunTrial(benchmark::State& state) {
  const StateVector psi = haar_random_state(2, 1);
  NoiseSpec noise;
  noise.placement = static_cast<Placement>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(psi, 0.05, noise));
}
BENCHMARK(BM_RunTrial)->DenseRange(0, 3);

static void BM_SimulateCounts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = DensityMatrix::pure(haar_random_state(n, 2));
  const auto settings = enumerate_settings(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_counts(rho, settings, Shots::sampled(100000), 3));
  }
}
BENCHMARK(BM_SimulateCounts)->DenseRange(1, 3);

static void BM_ReconstructState(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = DensityMatrix::pure(haar_random_state(n, 2));
  const auto counts = simulate_counts(rho, enumerate_settings(n), Shots::sampled(100000), 3);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_state(counts, n));
}
BENCHMARK(BM_ReconstructState)->DenseRange(1, 3);

static void BM_ComparisonPoint(benchmark::State& state) {
  StudyConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  cfg.p_grid = {0.05};
  cfg.bootstrap_resamples = 0;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_comparison(cfg));
}
BENCHMARK(BM_ComparisonPoint)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_FitDephasing(benchmark::State& state) {
  const BasisMap h = BasisMap::hadamard(3);
  const DensityMatrix rho_th = DensityMatrix::pure(haar_random_state(3, 4));
  const ComplexMatrix rho_exp = correlated_dephasing(0.012, 3, &h).apply_raw(rho_th.matrix());
  for (auto _ : state) benchmark::DoNotOptimize(fit_dephasing_p(rho_th, rho_exp, &h));
}
BENCHMARK(BM_FitDephasing);
BENCHMARK_MAIN();
