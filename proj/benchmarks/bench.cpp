#include <benchmark/benchmark.h>

#include "bispectral/concomitant.hpp"
#include "bispectral/linalg.hpp"
#include "bispectral/parser.hpp"

using namespace bispectral;

namespace {

OreOp airy_power(int n) { return parse_op("Dx^2 - x", Var::x).pow(static_cast<unsigned>(n)); }

DarbouxTransform airy_transform() {
  Context ctx = Context::airy();
  return build_transform(ctx, fourier(ctx, parse("((1 - x)*Dx^2 + Dx + x^2 - x)^2 - 1", ctx.dialect())));
}

void BM_OreMul(benchmark::State& state) {
  OreOp a = airy_power(static_cast<int>(state.range(0)));
  OreOp b = parse_op("(x^2 - 1)*Dx^3 + x*Dx + 1/(x - 2)", Var::x);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_OreMul)->Arg(2)->Arg(4)->Arg(8);

void BM_Adjoint(benchmark::State& state) {
  OreOp a = airy_power(static_cast<int>(state.range(0))) * parse_op("x^3*Dx", Var::x);
  for (auto _ : state) benchmark::DoNotOptimize(adjoint(a));
}
BENCHMARK(BM_Adjoint)->Arg(4)->Arg(8);

void BM_ConcomitantForm(benchmark::State& state) {
  OreOp d = airy_power(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(concomitant_form(d, GaussianRational(2)));
}
BENCHMARK(BM_ConcomitantForm)->Arg(4)->Arg(8);

void BM_ReducedSystem(benchmark::State& state) {
  DarbouxTransform t = airy_transform();
  int L = static_cast<int>(state.range(0));
  auto cands = candidate_space(t, L, L);
  EndpointSpec ep{2, 2, EndpointMode::finite_plus_infinity, EndpointMode::finite_plus_infinity};
  for (auto _ : state) benchmark::DoNotOptimize(assemble_reduced_system(cands, ep));
  state.counters["candidates"] = static_cast<double>(cands.size());
}
BENCHMARK(BM_ReducedSystem)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Nullspace(benchmark::State& state) {
  DarbouxTransform t = airy_transform();
  int L = static_cast<int>(state.range(0));
  auto cands = candidate_space(t, L, L);
  EndpointSpec ep{2, 2, EndpointMode::finite_plus_infinity, EndpointMode::finite_plus_infinity};
  Matrix a = assemble_reduced_system(cands, ep);
  int cols = static_cast<int>(cands.size());
  for (auto _ : state) benchmark::DoNotOptimize(nullspace(a, cols));
  state.counters["rows"] = static_cast<double>(a.size());
  state.counters["cols"] = cols;
}
BENCHMARK(BM_Nullspace)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SolveProlate(benchmark::State& state) {
  DarbouxTransform t = trivial_transform(Context::exp());
  EndpointSpec ep{1, GaussianRational::imag_unit(), EndpointMode::symmetric_pair, EndpointMode::symmetric_pair};
  int L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(t, L, L, ep));
}
BENCHMARK(BM_SolveProlate)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
