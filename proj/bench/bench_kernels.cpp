// Serial reference vs OpenMP kernels. Arg 0 selects the backend (0 serial, 1 OpenMP).

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "graphmetro/graph.hpp"
#include "graphmetro/graph_state.hpp"
#include "graphmetro/kernels.hpp"
#include "graphmetro/metrology.hpp"
#include "graphmetro/optimize.hpp"
#include "graphmetro/sun.hpp"

using namespace graphmetro;

namespace {

kernels::Backend backend_of(const benchmark::State& st) {
  return st.range(0) == 0 ? kernels::Backend::kSerial : kernels::Backend::kOpenMP;
}

void label(benchmark::State& st) {
  st.SetLabel(st.range(0) == 0 ? "serial" : "openmp x" + std::to_string(kernels::omp::max_threads()));
}

void BM_StabilizerDensity(benchmark::State& st) {
  const auto group = stabilizer_generators(catalog("ring", static_cast<int>(st.range(1))));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::stabilizer_density(group, backend_of(st)));
  label(st);
}
BENCHMARK(BM_StabilizerDensity)->ArgsProduct({{0, 1}, {6, 8, 10}})->Unit(benchmark::kMillisecond);

void BM_GeneratorCovariance(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  const ComplexVector psi = graph_state_circuit(catalog("complete", n)).amplitudes();
  const auto ops = local_pauli_set(n, Axis::kX).operators;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::generator_covariance(psi, ops, backend_of(st)));
  label(st);
}
BENCHMARK(BM_GeneratorCovariance)->ArgsProduct({{0, 1}, {6, 8}})->Unit(benchmark::kMillisecond);

void BM_QfimSweep(benchmark::State& st) {
  const auto rho = graph_state_stabilizer(catalog("complete", 4));
  std::vector<RealVector> thetas;
  for (int i = 0; i < 64; ++i) thetas.push_back(Eigen::Vector3d(0.05 * i, 0.3, -0.2));
  for (auto _ : st) benchmark::DoNotOptimize(qfim_sweep(rho, collective_set(4), thetas, backend_of(st)));
  label(st);
}
BENCHMARK(BM_QfimSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GridScan(benchmark::State& st) {
  const auto rho = graph_state_stabilizer(catalog("complete", 3));
  const auto f = crb_objective(rho, collective_set(3));
  const Bounds box(3, {-0.5, 0.5});
  for (auto _ : st) benchmark::DoNotOptimize(grid_scan(f, box, 15, backend_of(st)));
  label(st);
}
BENCHMARK(BM_GridScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Pso(benchmark::State& st) {
  const auto rho = graph_state_stabilizer(catalog("complete", 3));
  PsoConfig cfg;
  cfg.iterations = 20;
  for (auto _ : st) benchmark::DoNotOptimize(minimize_crb(rho, collective_set(3), cfg, backend_of(st)));
  label(st);
}
BENCHMARK(BM_Pso)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
