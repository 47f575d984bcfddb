#include <benchmark/benchmark.h>

#include "factorchoi/algebra.hpp"
#include "factorchoi/maps.hpp"
#include "factorchoi/positivity.hpp"
#include "factorchoi/random.hpp"
#include "support.hpp"

using namespace factorchoi;
namespace t = factorchoi::testing;

static void BM_SpectralDecompose(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Rng rng(7);
  const CElement el = t::random_self_adjoint_element(rng, FactorRep::tracial(n), 2);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decompose(el));
}
BENCHMARK(BM_SpectralDecompose)->Arg(2)->Arg(3)->Arg(4);

static void BM_KrausFromDphi(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Rng rng(8);
  const PairSumMap phi = t::random_cp_map(rng, n, 3);
  const FactorRep rep = FactorRep::tracial(n);
  for (auto _ : state) benchmark::DoNotOptimize(kraus_from_dphi(phi, rep));
}
BENCHMARK(BM_KrausFromDphi)->Arg(2)->Arg(3)->Arg(4);

static void BM_Seesaw(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const CMatrix d = dphi(t::trace_minus_identity(n), FactorRep::tracial(n));
  for (auto _ : state) benchmark::DoNotOptimize(product_state_min_seesaw(d, 8, 500, 1e-9, 42, 1));
}
BENCHMARK(BM_Seesaw)->Arg(2)->Arg(3);

static void BM_BruteGrid(benchmark::State& state) {
  const CMatrix d = dphi(t::transpose_map(2), FactorRep::tracial(2));
  for (auto _ : state) benchmark::DoNotOptimize(product_state_min_brute(d, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BruteGrid)->Arg(30)->Arg(90);

BENCHMARK_MAIN();
