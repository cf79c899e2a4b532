#include <benchmark/benchmark.h>

#include "topent/compare.hpp"
#include "topent/entropy.hpp"
#include "topent/numeric.hpp"
#include "topent/pcd.hpp"
#include "topent/persistence.hpp"
#include "topent/separate.hpp"
#include "topent/vrips.hpp"

namespace {

using namespace topent;

PointCloud torus(std::size_t n) { return sample_torus(n, 2.0, 0.5, 7); }

void BM_BuildFiltration(benchmark::State& state) {
  const PointCloud cloud = torus(static_cast<std::size_t>(state.range(0)));
  const DistanceMatrix d = pairwise_distances(cloud);
  const double t = scale_bounds(d).t_max;
  for (auto _ : state) {
    Filtration f = build_vr_filtration(d, 2, t);
    benchmark::DoNotOptimize(f.size());
  }
}
BENCHMARK(BM_BuildFiltration)->Arg(50)->Arg(100)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  const PointCloud cloud = torus(static_cast<std::size_t>(state.range(0)));
  const Filtration f = build_vr_filtration(cloud, 2, scale_bounds(cloud).t_max);
  const ReductionOptions options{.clearing = state.range(1) != 0};
  for (auto _ : state) {
    Barcode b = compute_barcode(f, options);
    benchmark::DoNotOptimize(b.size());
  }
  state.SetLabel(options.clearing ? "clearing" : "plain");
}
BENCHMARK(BM_Reduce)
    ->Args({50, 1})
    ->Args({50, 0})
    ->Args({100, 1})
    ->Args({100, 0})
    ->Args({150, 1})
    ->Unit(benchmark::kMillisecond);

void BM_UnionFind(benchmark::State& state) {
  const PointCloud cloud = torus(static_cast<std::size_t>(state.range(0)));
  const DistanceMatrix d = pairwise_distances(cloud);
  const double t = scale_bounds(d).t_max;
  for (auto _ : state) benchmark::DoNotOptimize(dim0_barcode_unionfind(d, t).size());
}
BENCHMARK(BM_UnionFind)->Arg(150)->Arg(400);

void BM_Entropy(benchmark::State& state) {
  Rng rng(1);
  std::vector<double> l(static_cast<std::size_t>(state.range(0)));
  for (double& x : l) x = rng.uniform(1e-3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(persistent_entropy(l));
}
BENCHMARK(BM_Entropy)->Arg(100)->Arg(10000);

void BM_Separate(benchmark::State& state) {
  const PointCloud cloud = torus(150);
  const Barcode b = compute_barcode(build_vr_filtration(cloud, 2, scale_bounds(cloud).t_max));
  for (auto _ : state) benchmark::DoNotOptimize(separate_features(b).feature_bars.size());
}
BENCHMARK(BM_Separate)->Unit(benchmark::kMillisecond);

void BM_Bottleneck(benchmark::State& state) {
  const PointCloud a = torus(static_cast<std::size_t>(state.range(0)));
  const PointCloud b = perturb(a, 0.05, 3);
  const Diagram da = diagram_of(dim0_barcode_unionfind(a, scale_bounds(a).t_max), 0);
  const Diagram db = diagram_of(dim0_barcode_unionfind(b, scale_bounds(b).t_max), 0);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_distance(da, db));
}
BENCHMARK(BM_Bottleneck)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_GhDistortion(benchmark::State& state) {
  const PointCloud v = sample_circle(static_cast<std::size_t>(state.range(0)), 1.0, 0.1, 2);
  const PointCloud w = perturb(v, 0.05, 4);
  for (auto _ : state) benchmark::DoNotOptimize(gh_distortion(v, w));
}
BENCHMARK(BM_GhDistortion)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
