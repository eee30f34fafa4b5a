// Microbenchmarks for the hot paths: Hodge star, curvature assembly, the
// Riemann-tensor oracle, and shortest-path batches on the sample cloud.

#include <benchmark/benchmark.h>

#include "vaisman/ghlimit.hpp"

using namespace vaisman;

namespace {

Pt<double> fixed_point(const HermitianModel& m) {
    Rng rng(99);
    return m.sample(rng);
}

void BM_HodgeStar(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    HermitianModel h = hopf_cone(n);
    Pt<double> x = fixed_point(h);
    MetricAtPoint m = metric_at(h, x);
    Form omega = h.omega(x);
    for (auto _ : state) benchmark::DoNotOptimize(hodge_star(omega, m));
}
BENCHMARK(BM_HodgeStar)->Arg(2)->Arg(3)->Arg(4);

void BM_ChernRicci(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    HermitianModel h = hopf_cone(n);
    Pt<double> x = fixed_point(h);
    for (auto _ : state) benchmark::DoNotOptimize(chern_ricci(h, x));
}
BENCHMARK(BM_ChernRicci)->Arg(3)->Arg(4);

void BM_LcRicci(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    HermitianModel h = hopf_cone(n);
    Pt<double> x = fixed_point(h);
    for (auto _ : state) benchmark::DoNotOptimize(lc_ricci(h, x));
}
BENCHMARK(BM_LcRicci)->Arg(3)->Arg(4);

void BM_RiemannScalar(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    HermitianModel h = hopf_cone(n);
    Pt<double> x = fixed_point(h);
    for (auto _ : state) benchmark::DoNotOptimize(riemann_scalar_direct(h, x));
}
BENCHMARK(BM_RiemannScalar)->Arg(3)->Arg(4);

void BM_LensOmega(benchmark::State& state) {
    HermitianModel l = lens_cone(1, 2);
    Pt<double> x = fixed_point(l);
    for (auto _ : state) benchmark::DoNotOptimize(l.omega(x));
}
BENCHMARK(BM_LensOmega);

void BM_GraphDistance(benchmark::State& state) {
    HermitianModel h = hopf_cone(2);
    SampleCloud cloud = sample_cloud(h, std::exp(1.0), 1000, 10, 7);
    for (auto _ : state) benchmark::DoNotOptimize(graph_distance(cloud, 0.5, 32));
}
BENCHMARK(BM_GraphDistance)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
