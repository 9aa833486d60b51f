#include <benchmark/benchmark.h>

#include "dunklsq/kernel.hpp"

using namespace dunklsq;

static void BM_HeatKernelBessel(benchmark::State& state) {
  const AlphaVector alpha({0.3});
  const HeatKernel kern(alpha, EpsVector::zeros(1));
  const Point x{0.7}, y{1.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kern.value(x, y, 0.25));
  }
}
BENCHMARK(BM_HeatKernelBessel);

static void BM_HeatKernelSchlafli(benchmark::State& state) {
  const AlphaVector alpha({0.3});
  KernelEvalConfig cfg;
  cfg.rep = KernelRep::Schlafli;
  cfg.pi_nodes = static_cast<int>(state.range(0));
  const HeatKernel kern(alpha, EpsVector::zeros(1), cfg);
  const Point x{0.7}, y{1.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kern.value(x, y, 0.25));
  }
}
BENCHMARK(BM_HeatKernelSchlafli)->Arg(24)->Arg(48)->Arg(96);

static void BM_HeatKernelSeries(benchmark::State& state) {
  const AlphaVector alpha({0.3});
  KernelEvalConfig cfg;
  cfg.rep = KernelRep::Series;
  cfg.series_n = static_cast<int>(state.range(0));
  const HeatKernel kern(alpha, EpsVector::zeros(1), cfg);
  const Point x{0.7}, y{1.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kern.value(x, y, 0.25));
  }
}
BENCHMARK(BM_HeatKernelSeries)->Arg(32)->Arg(64)->Arg(128);

static void BM_DerivativeKernelNorm(benchmark::State& state) {
  const AlphaVector alpha({0.3});
  const HeatKernel kern(alpha, EpsVector::zeros(1));
  const ZetaPanels panels = ZetaPanels::make(14, 6, 12);
  const ConeSpec cone;
  KernelFamilySpec fam;
  fam.kind = AreaKind::Vertical;
  const Point x{1.0}, y{1.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(banach_norm(kern, fam, x, y, BanachSpace::L2tdt, cone, panels));
  }
}
BENCHMARK(BM_DerivativeKernelNorm);

static void BM_ConeKernelNorm(benchmark::State& state) {
  const AlphaVector alpha({0.3});
  const HeatKernel kern(alpha, EpsVector::zeros(1));
  const ZetaPanels panels = ZetaPanels::make(14, 6, 12);
  ConeSpec cone;
  cone.nodes = static_cast<int>(state.range(0));
  cone.boundary_refine = 1;
  KernelFamilySpec fam;
  fam.kind = AreaKind::Vertical;
  const Point x{1.0}, y{1.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(banach_norm(kern, fam, x, y, BanachSpace::L2ConeTdt, cone, panels));
  }
}
BENCHMARK(BM_ConeKernelNorm)->Arg(8)->Arg(16);
