#include <benchmark/benchmark.h>

#include "dunklsq/squarefn.hpp"

using namespace dunklsq;

namespace {

SpectralFunction sample_function(std::size_t d) {
  SpectralFunction f(AlphaVector::constant(d, 0.3));
  if (d == 1) {
    f.set(MultiIndex({0}), 1.0);
    f.set(MultiIndex({2}), -0.6);
    f.set(MultiIndex({4}), 0.25);
    f.set(MultiIndex({6}), 0.1);
  } else {
    f.set(MultiIndex({0, 0}), 1.0);
    f.set(MultiIndex({2, 0}), -0.6);
    f.set(MultiIndex({0, 2}), 0.4);
    f.set(MultiIndex({2, 2}), 0.2);
  }
  return f;
}

}  // namespace

static void BM_GFunctionClosedForm(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const SpectralFunction f = sample_function(d);
  SquareFnKind kind;
  kind.deriv = AreaKind::Vertical;
  kind.eps_plus = EpsVector::zeros(d);
  const Point x(d, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g_function(kind, f, x));
  }
}
BENCHMARK(BM_GFunctionClosedForm)->Arg(1)->Arg(2);

static void BM_AreaIntegral(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const SpectralFunction f = sample_function(d);
  SquareFnKind kind;
  kind.deriv = AreaKind::Vertical;
  kind.eps_plus = EpsVector::zeros(d);
  const Point x(d, 0.9);
  const ZetaPanels panels = ZetaPanels::make(14, 6, 12);
  const ConeSpec cone;
  for (auto _ : state) {
    benchmark::DoNotOptimize(area_integral(kind, f, x, cone, panels));
  }
}
BENCHMARK(BM_AreaIntegral)->Arg(1)->Arg(2);
