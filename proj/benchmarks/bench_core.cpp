#include <benchmark/benchmark.h>

#include "hmfs/entanglement.hpp"
#include "hmfs/fidelity.hpp"

namespace {

using namespace hmfs;

void BM_HaarUnitary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(n, rng));
}
BENCHMARK(BM_HaarUnitary)->RangeMultiplier(2)->Range(2, 32);

void BM_MeanFidelityMc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(2, 0);
  const BoundaryUnitary u = haar_unitary(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mean_fidelity_mc(u, 10000, rng));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_MeanFidelityMc)->Arg(2)->Arg(4)->Arg(8);

void BM_EvaporateAliceBob(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(3, 0);
  const BoundaryUnitary u = haar_unitary(n, rng);
  const StateVector x = alice_bob_initial(n, haar_state(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(evaporate_alice_bob(x, u));
}
BENCHMARK(BM_EvaporateAliceBob)->DenseRange(2, 12, 2);

void BM_PtSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(4, 0);
  const BoundaryUnitary u = haar_unitary(n, rng);
  const StateVector psi = evaporate_alice_bob(alice_bob_initial(n, haar_state(n, rng)), u);
  const DensityOperator rho = rho_ab(psi);
  for (auto _ : state) benchmark::DoNotOptimize(pt_spectrum_full(rho));
}
BENCHMARK(BM_PtSpectrum)->DenseRange(2, 12, 2);

}  // namespace

BENCHMARK_MAIN();
