#include <benchmark/benchmark.h>

#include <random>

#include "gsfrac/integrator.hpp"
#include "gsfrac/operators.hpp"

namespace {

gsfrac::Field random_field(const gsfrac::GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  gsfrac::Field f(g);
  for (auto& x : f.values()) x = dist(gen);
  return f;
}

void BM_FracNaive(benchmark::State& state) {
  const auto g = gsfrac::make_grid(state.range(0), state.range(0), 1.0);
  const gsfrac::FracKernel kernel(g, 0.5);
  const auto f = random_field(g, 1);
  for (auto _ : state) {
    auto out = gsfrac::apply_frac_naive(kernel, f);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_FracNaive)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FracFast(benchmark::State& state) {
  const auto g = gsfrac::make_grid(state.range(0), state.range(0), 1.0);
  const gsfrac::FracKernel kernel(g, 0.5);
  gsfrac::FracWorkspace ws(kernel);
  const auto f = random_field(g, 1);
  gsfrac::Field out(g);
  for (auto _ : state) {
    gsfrac::apply_frac_fast(kernel, f, out, ws);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_FracFast)
    ->Arg(16)
    ->Arg(32)
    ->Arg(64)
    ->Arg(128)
    ->Arg(256)
    ->Unit(benchmark::kMillisecond);

void BM_LocalLaplacian(benchmark::State& state) {
  const auto g = gsfrac::make_grid(state.range(0), state.range(0), 1.0);
  const auto f = random_field(g, 1);
  gsfrac::Field out(g);
  for (auto _ : state) {
    gsfrac::apply_local_laplacian(f, out);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_LocalLaplacian)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_KernelBuild(benchmark::State& state) {
  const auto g = gsfrac::make_grid(state.range(0), state.range(0), 1.0);
  for (auto _ : state) {
    gsfrac::FracKernel kernel(g, 0.5);
    benchmark::DoNotOptimize(kernel.max_diag());
  }
}
BENCHMARK(BM_KernelBuild)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_MixedStep(benchmark::State& state) {
  const auto g = gsfrac::make_grid(state.range(0), state.range(0), 1.0);
  gsfrac::GrayScottParams p;
  p.d1 = 2e-5;
  p.d2 = 1e-5;
  const gsfrac::FracKernel kernel(g, p.s);
  gsfrac::Stepper stepper(p, g, &kernel);
  auto st = gsfrac::make_initial_state(g, {});
  for (auto _ : state) stepper.advance(st, 1.0);
}
BENCHMARK(BM_MixedStep)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
