#include <benchmark/benchmark.h>

#include <random>

#include "mamass/bounds.hpp"
#include "mamass/functions.hpp"
#include "mamass/mass.hpp"
#include "mamass/quadrature.hpp"
#include "mamass/regularize.hpp"

using namespace mamass;

namespace {

CVec random_unit(int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> N;
  CVec z(d);
  for (int j = 0; j < d; ++j) z(j) = cplx(N(gen), N(gen));
  return z / z.norm();
}

void BM_EvalScaled(benchmark::State& state) {
  static const char* specs[] = {"radial(profile=log,c=1)", "monomial_ideal(m=[[1,0],[0,2]],w=[1,1])",
                                "lse_toric(a=[1,2],beta=2)", "sqrt_compose(radial(profile=log,c=1))"};
  FunctionSpec f = parse_spec(specs[state.range(0)]);
  CVec w = random_unit(2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(eval_scaled(f, -10.0, w));
  state.SetLabel(specs[state.range(0)]);
}
BENCHMARK(BM_EvalScaled)->DenseRange(0, 3);

void BM_GeneralizedEigs(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  CMat A = CMat::Random(n, n);
  CMat G = A * A.adjoint() + CMat::Identity(n, n);
  CMat H = CMat::Random(n, n);
  H = (H + H.adjoint()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(generalized_eigs(G, H));
}
BENCHMARK(BM_GeneralizedEigs)->DenseRange(1, 4);

void BM_CpnRule(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  IntegrationScheme s = n == 1 ? default_scheme(1) : IntegrationScheme{SchemeKind::mcis, 20000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(make_cpn_rule(n, s, default_depth(-10.0)));
}
BENCHMARK(BM_CpnRule)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_DimensionalConstant(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dimensional_constant(n));
}
BENCHMARK(BM_DimensionalConstant)->Arg(4)->Arg(16)->Arg(64);

void BM_MollifyAt(benchmark::State& state) {
  FunctionSpec f = parse_spec("monomial_ideal(m=[[1,0],[0,2]],w=[1,1])");
  CVec z = random_unit(2, 5) * 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(mollify_at(f, z, 0.01));
}
BENCHMARK(BM_MollifyAt)->Unit(benchmark::kMillisecond);

}  // namespace
