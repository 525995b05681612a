#include <benchmark/benchmark.h>

#include "mamass/bounds.hpp"
#include "mamass/energy.hpp"
#include "mamass/functions.hpp"
#include "mamass/invariants.hpp"
#include "mamass/mass.hpp"

using namespace mamass;

namespace {

const char* kMono = "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])";

void BM_BoundaryMassTensor(benchmark::State& state) {
  FunctionSpec f = parse_spec(kMono);
  for (auto _ : state) benchmark::DoNotOptimize(boundary_mass(f, 1, -10.0, default_scheme(1)));
}
BENCHMARK(BM_BoundaryMassTensor)->Unit(benchmark::kMillisecond);

void BM_BoundaryMassMC(benchmark::State& state) {
  FunctionSpec f = parse_spec("monomial_ideal(m=[[1,0,0],[0,2,0],[0,0,2]])");
  IntegrationScheme s{SchemeKind::mcis, state.range(0), 1};
  for (auto _ : state) benchmark::DoNotOptimize(boundary_mass(f, 2, -10.0, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoundaryMassMC)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_ShellOracle(benchmark::State& state) {
  FunctionSpec f = parse_spec(kMono);
  IntegrationScheme s{SchemeKind::mcis, 20000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(shell_oracle(f, 1, -8.0, -4.0, s));
}
BENCHMARK(BM_ShellOracle)->Unit(benchmark::kMillisecond);

void BM_LelongNumber(benchmark::State& state) {
  FunctionSpec f = parse_spec(kMono);
  for (auto _ : state) benchmark::DoNotOptimize(lelong_number(f, 1, {-1e2, -1e3, -1e4, -1e5}, default_scheme(1)));
}
BENCHMARK(BM_LelongNumber)->Unit(benchmark::kMillisecond);

void BM_MaxDirectional(benchmark::State& state) {
  FunctionSpec f = parse_spec(kMono);
  int density = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_directional(f, 1, 20.0, density));
}
BENCHMARK(BM_MaxDirectional)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_EnergyTerms(benchmark::State& state) {
  FunctionSpec f = parse_spec(kMono);
  for (auto _ : state) benchmark::DoNotOptimize(energy_terms(f, 1, -10.0, default_scheme(1)));
}
BENCHMARK(BM_EnergyTerms)->Unit(benchmark::kMillisecond);

void BM_IdentityVerification(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_alternating_expansion_identity(n));
}
BENCHMARK(BM_IdentityVerification)->DenseRange(2, 8, 3)->Unit(benchmark::kMillisecond);

}  // namespace
