#include <benchmark/benchmark.h>

#include "eit/dtn.hpp"
#include "eit/greens.hpp"
#include "eit/probe.hpp"

namespace {

eit::Scenario two_layer() {
  eit::Scenario s;
  s.regions = {{eit::BandRegion{0.0, 0.6}, 2.0}, {eit::BandRegion{0.6}, 1.0}};
  s.gamma_arc = {-1.5707963267948966, 1.5707963267948966};
  return s;
}

double mesh_size(const benchmark::State& state) { return 0.1 / static_cast<double>(state.range(0)); }

void BM_BuildMesh(benchmark::State& state) {
  const auto s = two_layer();
  for (auto _ : state) benchmark::DoNotOptimize(eit::build_mesh(s, mesh_size(state)));
}
BENCHMARK(BM_BuildMesh)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const auto s = two_layer();
  const auto mesh = eit::build_mesh(s, mesh_size(state));
  const auto gamma = eit::conductivity_field(s, mesh);
  for (auto _ : state) benchmark::DoNotOptimize(eit::assemble(mesh, gamma, 0.0));
  state.counters["vertices"] = static_cast<double>(mesh.vertex_count());
}
BENCHMARK(BM_Assemble)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ForwardSolve(benchmark::State& state) {
  const auto s = two_layer();
  const auto mesh = eit::build_mesh(s, mesh_size(state));
  const auto f = eit::fourier_mode(mesh, 2);
  for (auto _ : state) benchmark::DoNotOptimize(eit::solve_forward(s, mesh, f));
  state.counters["vertices"] = static_cast<double>(mesh.vertex_count());
}
BENCHMARK(BM_ForwardSolve)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LocalDtn(benchmark::State& state) {
  const auto s = two_layer();
  const auto mesh = eit::build_mesh(s, mesh_size(state));
  for (auto _ : state) benchmark::DoNotOptimize(eit::local_dtn_matrix(s, mesh));
}
BENCHMARK(BM_LocalDtn)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_DirichletGreen(benchmark::State& state) {
  const auto s = two_layer();
  const auto mesh = eit::build_mesh(s, mesh_size(state));
  for (auto _ : state) benchmark::DoNotOptimize(eit::dirichlet_green(s, mesh, {0.0, 0.3}));
}
BENCHMARK(BM_DirichletGreen)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SingularProbe(benchmark::State& state) {
  const auto a = two_layer();
  auto b = a;
  b.regions[1].conductivity = 1.5;
  const auto mesh = eit::build_mesh(a, mesh_size(state), eit::pair_options(a, b));
  const auto fam = eit::make_family(a, 0.0, 0.5, 0.1, {4, 8, 16});
  for (auto _ : state) benchmark::DoNotOptimize(eit::run_singular_probe(a, b, mesh, fam, 1e-6));
}
BENCHMARK(BM_SingularProbe)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
