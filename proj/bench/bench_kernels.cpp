// Serial reference loops against the OpenMP kernels on growing meshes.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "isoform/generators.hpp"
#include "isoform/kernels.hpp"
#include "isoform/parallel.hpp"

using namespace isoform;

namespace {

// Planar square grid lifted onto a smooth graph so every kernel sees
// generic geometry.
Realization lifted_grid(int n) {
  Domain d = square_domain(n, 1.0);
  std::vector<Vec3> p = d.realization.positions();
  for (auto& x : p) x.z() = 0.3 * std::sin(2 * x.x()) * std::cos(3 * x.y());
  return d.realization.with_positions(p);
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state, const Realization& r) {
  state.SetLabel(state.range(1) ? "parallel" : "serial");
  state.counters["faces"] = r.mesh().face_count();
}

void BM_FaceGeometry(benchmark::State& state) {
  Realization r = lifted_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::face_geometry(r, exec_of(state)));
  label(state, r);
}

void BM_CotanWeights(benchmark::State& state) {
  Realization r = lifted_grid(static_cast<int>(state.range(0)));
  FaceGeometry g = face_geometry(r);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::cotan_weights(r.mesh(), g, exec_of(state)));
  label(state, r);
}

void BM_LaplacianResidual(benchmark::State& state) {
  Realization r = lifted_grid(static_cast<int>(state.range(0)));
  auto w = kernels::cotan_weights(r.mesh(), face_geometry(r), Exec::serial);
  std::vector<double> u(r.mesh().vertex_count());
  for (int v = 0; v < r.mesh().vertex_count(); ++v) u[v] = r.position(v).x() * r.position(v).y();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::laplacian_residual(r.mesh(), w, u, exec_of(state)));
  label(state, r);
}

void BM_StressMatrix(benchmark::State& state) {
  Realization r = lifted_grid(static_cast<int>(state.range(0)));
  std::vector<double> scale(r.mesh().interior_edges().size(), 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kernels::self_stress_matrix(r.mesh(), r.positions(), scale, kernels::StressRows::quadratic, exec_of(state)));
  label(state, r);
}

void BM_MeanCurvatureRate(benchmark::State& state) {
  Realization r = lifted_grid(static_cast<int>(state.range(0)));
  std::vector<Vec3> Z(r.mesh().face_count());
  for (int f = 0; f < r.mesh().face_count(); ++f) Z[f] = Vec3(std::sin(f), std::cos(f), 0.1 * f);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mean_curvature_rate(r, Z, exec_of(state)));
  label(state, r);
}

void grid_args(benchmark::internal::Benchmark* b) {
  for (int n : {64, 256, 1024})
    for (int par : {0, 1}) b->Args({n, par});
}

void dense_args(benchmark::internal::Benchmark* b) {
  for (int n : {16, 32, 48})
    for (int par : {0, 1}) b->Args({n, par});
}

}  // namespace

BENCHMARK(BM_FaceGeometry)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CotanWeights)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LaplacianResidual)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StressMatrix)->Apply(dense_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MeanCurvatureRate)->Apply(grid_args)->Unit(benchmark::kMicrosecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
