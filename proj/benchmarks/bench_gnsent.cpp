#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include <gnsent/gnsent.hpp>

namespace {

// lambda_i proportional to i + 1
gnsent::State ramp_state(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return gnsent::diagonal_state(w);
}

void BM_BuildGns(benchmark::State& st) {
  const gnsent::State omega = ramp_state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(gnsent::build_gns(omega));
}
BENCHMARK(BM_BuildGns)->Arg(2)->Arg(4)->Arg(8);

void BM_CommutantBasis(benchmark::State& st) {
  const gnsent::GNSData g = gnsent::build_gns(ramp_state(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(gnsent::commutant_basis(g));
}
BENCHMARK(BM_CommutantBasis)->Arg(2)->Arg(3)->Arg(4);

void BM_IrreducibleProjectors(benchmark::State& st) {
  const gnsent::GNSData g = gnsent::build_gns(gnsent::tracial_state(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(gnsent::irreducible_projectors(g, 0));
}
BENCHMARK(BM_IrreducibleProjectors)->Arg(2)->Arg(4)->Arg(8);

void BM_TomitaModular(benchmark::State& st) {
  const gnsent::GNSData g = gnsent::build_gns(ramp_state(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(gnsent::tomita_modular(g));
}
BENCHMARK(BM_TomitaModular)->Arg(2)->Arg(4)->Arg(8);

void BM_EntropyScan(benchmark::State& st) {
  const gnsent::GNSData g = gnsent::build_gns(ramp_state(static_cast<int>(st.range(0))));
  const gnsent::ModularData m = gnsent::tomita_modular(g);
  for (auto _ : st) benchmark::DoNotOptimize(gnsent::entropy_scan(g, m, 100, 1));
  st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_EntropyScan)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
