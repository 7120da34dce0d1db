#include <benchmark/benchmark.h>

#include "bqec/lattice.hpp"
#include "bqec/matching.hpp"
#include "bqec/osc_encoding.hpp"
#include "bqec/rng.hpp"
#include "bqec/shift.hpp"
#include "bqec/surface_gkp.hpp"

using namespace bqec;

static void BM_PErr(benchmark::State& state) {
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_err(s));
    s = s < 1.0 ? s + 1e-6 : 0.1;
  }
}
BENCHMARK(BM_PErr);

static void BM_ConditionalPauliProb(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditional_pauli_prob(0.434, z));
    z = z < 0.8 ? z + 1e-6 : 0.0;
  }
}
BENCHMARK(BM_ConditionalPauliProb);

static void BM_ClosestVectorDecode(benchmark::State& state) {
  auto hex = GkpLatticeCode::hexagonal();
  Rng rng(1);
  for (auto _ : state) {
    Eigen::Vector2d z(4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5));
    benchmark::DoNotOptimize(closest_vector_decode(hex, z));
  }
}
BENCHMARK(BM_ClosestVectorDecode);

static void BM_Mwpm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) w[u][v] = w[v][u] = 1.0 + 10.0 * rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_weight_perfect_matching(w));
  }
}
BENCHMARK(BM_Mwpm)->Arg(16)->Arg(48)->Arg(96);

static void BM_SurfaceTrial(benchmark::State& state) {
  SurfaceGkpConfig cfg;
  cfg.distance = static_cast<int>(state.range(0));
  cfg.noise.sigma_gkp = 0.19;
  cfg.master_seed = 5;
  SurfaceGkpSimulator sim(cfg);
  uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.run_trial(t++));
  }
}
BENCHMARK(BM_SurfaceTrial)->Arg(3)->Arg(5)->Arg(7);

static void BM_TmsLogicalVariance(benchmark::State& state) {
  double g = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tms_logical_variance(0.1, g));
    g = g < 20.0 ? g + 1e-3 : 2.0;
  }
}
BENCHMARK(BM_TmsLogicalVariance);

BENCHMARK_MAIN();
