// Microbenchmarks for the hot paths: field evaluation, inversion, the Minty
// transform, ellipticity sampling, and the Dirichlet solver.

#include <benchmark/benchmark.h>

#include <cmath>

#include "mono2d/beltrami.hpp"
#include "mono2d/classify.hpp"
#include "mono2d/fem.hpp"
#include "mono2d/field.hpp"
#include "mono2d/transforms.hpp"

using namespace mono2d;

namespace {

MonotoneField plap4() {
  FieldSpec s;
  s.kind = FieldKind::p_laplacian;
  s.p = 4.0;
  return make_catalog_field(s);
}

void BM_FieldEval(benchmark::State& state) {
  MonotoneField f = plap4();
  PlaneVec xi{0.7, -0.3};
  for (auto _ : state) benchmark::DoNotOptimize(f(xi));
}
BENCHMARK(BM_FieldEval);

void BM_MollifiedEval(benchmark::State& state) {
  MonotoneField f = mollify(plap4(), {0.1, 8});
  PlaneVec xi{0.7, -0.3};
  for (auto _ : state) benchmark::DoNotOptimize(f(xi));
}
BENCHMARK(BM_MollifiedEval);

void BM_Invert(benchmark::State& state) {
  MonotoneField f = plap4();
  InvertOptions opts;
  PlaneVec target{2.0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(invert_field(f, target, 1e-10, opts));
}
BENCHMARK(BM_Invert);

void BM_MintyForwardEval(benchmark::State& state) {
  MintyForwardResult fw = minty_forward(plap4());
  Complex z{0.4, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(fw.H(z));
}
BENCHMARK(BM_MintyForwardEval);

void BM_SampleEllipticity(benchmark::State& state) {
  MonotoneField f = plap4();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sample_ellipticity(f, {-1, -1, 1, 1}, 0.25, {0.1, 0.01}));
}
BENCHMARK(BM_SampleEllipticity);

void BM_SolveHarmonic(benchmark::State& state) {
  FieldSpec s;
  MonotoneField id = make_catalog_field(s);
  auto dom = build_disc_mesh(1.0 / state.range(0));
  auto boundary = [](double th) { return std::cos(2 * th); };
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_dirichlet(id, dom, boundary));
}
BENCHMARK(BM_SolveHarmonic)->Arg(8)->Arg(16);

void BM_SolveP4(benchmark::State& state) {
  MonotoneField f = mollify(plap4(), {0.1, 8});
  auto dom = build_disc_mesh(1.0 / state.range(0));
  auto boundary = [](double th) { return std::cos(3 * th); };
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_dirichlet(f, dom, boundary));
}
BENCHMARK(BM_SolveP4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
