#include <benchmark/benchmark.h>

#include "nzflow/census.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/families.hpp"
#include "nzflow/z3_flows.hpp"
#include "nzflow/z4_flows.hpp"
#include "nzflow/z6_flows.hpp"

using namespace nzflow;

namespace {

void BM_EdgeConnectivity(benchmark::State& state) {
  const Multigraph g = complete_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(edge_connectivity(g).value);
}
BENCHMARK(BM_EdgeConnectivity)->Arg(8)->Arg(16)->Arg(32);

void BM_CensusZ6(benchmark::State& state) {
  const Multigraph g = complete_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_nz_flows(g, Group::z2xz3()));
}
BENCHMARK(BM_CensusZ6)->Arg(4)->Arg(5)->Arg(6);

void BM_FlowPolynomial(benchmark::State& state) {
  const Multigraph g = petersen_graph();
  for (auto _ : state) benchmark::DoNotOptimize(flow_polynomial(g).coefficients.size());
}
BENCHMARK(BM_FlowPolynomial);

void BM_Z6Family(benchmark::State& state) {
  const Multigraph g = petersen_graph();
  for (auto _ : state) {
    benchmark::DoNotOptimize(z6_flow_family(g, state.range(0), [](const Flow&) { return true; }).emitted);
  }
}
BENCHMARK(BM_Z6Family)->Arg(100)->Arg(1000);

void BM_Z4Family(benchmark::State& state) {
  const Multigraph g = complete_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(z4_flow_family(g, 1000, [](const Flow&) { return true; }).emitted);
  }
}
BENCHMARK(BM_Z4Family)->Arg(5)->Arg(7);

void BM_Z3Family(benchmark::State& state) {
  const Multigraph g = multiplied(complete_graph(4), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(z3_flow_family(g, 1000, [](const Orientation&) { return true; }).emitted);
  }
}
BENCHMARK(BM_Z3Family);

}  // namespace
BENCHMARK_MAIN();
