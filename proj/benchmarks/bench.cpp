#include <benchmark/benchmark.h>

#include <torusdiv/cover.hpp>
#include <torusdiv/io.hpp>
#include <torusdiv/kuhn.hpp>
#include <torusdiv/rule.hpp>

namespace {

namespace cover = torusdiv::cover;
namespace geom = torusdiv::geom;
namespace io = torusdiv::io;
namespace kuhn = torusdiv::kuhn;
namespace rule = torusdiv::rule;

void BM_SubdivideStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto r = rule::make_subdivision_rule(n);
    const auto c = rule::iterate(rule::initial_sphere(n), r, 1);
    for (auto _ : state) {
        auto next = rule::subdivide(c, r);
        benchmark::DoNotOptimize(next);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.cells().size()));
}
BENCHMARK(BM_SubdivideStep)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LatticeRefine(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto tiling = cover::refine_exposed(n, k);
        benchmark::DoNotOptimize(tiling);
    }
}
BENCHMARK(BM_LatticeRefine)->Args({2, 4})->Args({3, 2})->Args({4, 1})->Unit(benchmark::kMillisecond);

void BM_KuhnTriangulation(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto tri = kuhn::kuhn_triangulation(p);
        benchmark::DoNotOptimize(tri);
    }
}
BENCHMARK(BM_KuhnTriangulation)->Arg(5)->Arg(6)->Arg(7);

void BM_LabeledIso(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const auto a = rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
    const auto b = cover::refine_exposed(n, k).complex;
    for (auto _ : state) {
        auto res = geom::labeled_isomorphic(a, b);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_LabeledIso)->Args({2, 4})->Args({3, 1})->Unit(benchmark::kMillisecond);

void BM_EulerCharacteristic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const auto c = rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
    for (auto _ : state) benchmark::DoNotOptimize(geom::euler_characteristic(c));
}
BENCHMARK(BM_EulerCharacteristic)->Args({3, 2})->Args({4, 1})->Unit(benchmark::kMillisecond);

void BM_SerializeJson(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    io::ComplexDocument doc;
    doc.n = n;
    doc.k = k;
    doc.complex = rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
    for (auto _ : state) benchmark::DoNotOptimize(io::serialize(doc));
}
BENCHMARK(BM_SerializeJson)->Args({2, 6})->Args({3, 3})->Unit(benchmark::kMillisecond);

}  // namespace
