#include <benchmark/benchmark.h>

#include "gravprobe/metrology.hpp"
#include "gravprobe/models/finite_well.hpp"
#include "gravprobe/models/harmonic.hpp"
#include "gravprobe/oracle.hpp"
#include "gravprobe/perturb.hpp"

using namespace gravprobe;

namespace {

void BM_PerturbationKet(benchmark::State& state) {
  const auto truncation = static_cast<std::size_t>(state.range(0));
  const auto problem = models::ho_problem({1, 1.0, UnitSystem::natural(), truncation});
  for (auto _ : state) benchmark::DoNotOptimize(perturbation_ket(problem, 0).ket_norm2());
}
BENCHMARK(BM_PerturbationKet)->Arg(40)->Arg(160)->Arg(640);

void BM_FswGroundQfi(benchmark::State& state) {
  models::FiniteWellProbe probe;
  probe.half_width = 1.0;
  probe.depth = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(models::fsw_ground_qfi(probe).value);
}
BENCHMARK(BM_FswGroundQfi)->Arg(5)->Arg(50)->Arg(500);

void BM_OracleDiagonalize(benchmark::State& state) {
  const auto h = oracle::discretize(models::HarmonicProbe{1, 1.0, UnitSystem::natural(), 40},
                                    static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::diagonalize(h, 1e-3, 4, false).energies);
}
BENCHMARK(BM_OracleDiagonalize)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_QfiFromFidelity(benchmark::State& state) {
  const auto h = oracle::discretize(models::HarmonicProbe{1, 1.0, UnitSystem::natural(), 40},
                                    static_cast<std::size_t>(state.range(0)));
  const auto family = oracle::oracle_state_family(h, oracle::EigenstateRecipe{0});
  for (auto _ : state) benchmark::DoNotOptimize(qfi_from_fidelity(family, 0.0, 1e-6).value);
}
BENCHMARK(BM_QfiFromFidelity)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
