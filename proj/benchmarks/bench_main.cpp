#include <numbers>

#include <benchmark/benchmark.h>

#include "vortexlab/fields.hpp"
#include "vortexlab/hyperbolic.hpp"
#include "vortexlab/kw_solver.hpp"
#include "vortexlab/moduli.hpp"
#include "vortexlab/specfun.hpp"

using namespace vortexlab;

namespace {

constexpr double kPi = std::numbers::pi;

void BM_Hyp2F1Series(benchmark::State& state) {
  const specfun::Hyp2F1Query q{0.4, 0.2, 0.8, {0.3, 0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(specfun::hyp2f1(q));
}
BENCHMARK(BM_Hyp2F1Series);

void BM_Hyp2F1Continuation(benchmark::State& state) {
  const specfun::Hyp2F1Query q{0.4, 0.2, 0.8, {2.0, 1e-3}};
  for (auto _ : state) benchmark::DoNotOptimize(specfun::hyp2f1(q));
}
BENCHMARK(BM_Hyp2F1Continuation);

void BM_KRSDensity(benchmark::State& state) {
  const KRSParams p = krs_params({-0.6, -0.7, -0.8});
  const complex z(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(krs_density(p, z));
}
BENCHMARK(BM_KRSDensity);

void BM_PullbackResidual(benchmark::State& state) {
  const KRSWeights w{-0.8, -0.8, -0.8};
  const PullbackVortex v = pullback_vortex(parse_rational_map("z^2"), w, w);
  const complex z(0.3, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(v.residual(z));
}
BENCHMARK(BM_PullbackResidual);

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  VortexProblem p;
  p.surface = make_surface(4.0 * kPi, {});
  p.zeros.points = {{ChartPoint::finite(0.0), 1}};
  const SphericalGrid g(n, 2 * n);
  const KWCoefficients c = assemble(p, g);
  for (auto _ : state) benchmark::DoNotOptimize(solve(c).iterations);
}
BENCHMARK(BM_Solve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ModuliVolume(benchmark::State& state) {
  ModuliQuery q;
  q.g = 4;
  q.d = 12;
  q.n = 3;
  q.V = 200.0;
  for (auto _ : state) benchmark::DoNotOptimize(semilocal_volume(q).value);
}
BENCHMARK(BM_ModuliVolume);

}  // namespace

BENCHMARK_MAIN();
