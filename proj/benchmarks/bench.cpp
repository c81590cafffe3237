#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "charges/lipschitz.hpp"
#include "charges/metric.hpp"
#include "charges/transport.hpp"

namespace {

using namespace charges;

std::shared_ptr<const FiniteMetricSpace> random_space(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<std::vector<double>> points(n, std::vector<double>(2));
    for (auto& p : points)
        for (double& c : p) c = coord(rng);
    return std::make_shared<FiniteMetricSpace>(FiniteMetricSpace::from_points_auto_bound(points));
}

DiscreteMeasure random_measure(std::shared_ptr<const FiniteMetricSpace> space,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mass(0.1, 1.0);
    std::vector<double> w(space->size());
    double total = 0.0;
    for (double& x : w) total += (x = mass(rng));
    for (double& x : w) x /= total;
    return DiscreteMeasure(std::move(space), std::move(w));
}

void BM_W1Primal(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto space = random_space(n, 11);
    DiscreteMeasure mu = random_measure(space, 12);
    DiscreteMeasure nu = random_measure(space, 13);
    for (auto _ : state)
        benchmark::DoNotOptimize(w1_primal(mu, nu, *space).cost);
}
BENCHMARK(BM_W1Primal)->Arg(16)->Arg(64)->Arg(128);

void BM_BuildPartition(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto space = random_space(n, 21);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_partition(*space, 0.2).mesh);
}
BENCHMARK(BM_BuildPartition)->Arg(64)->Arg(256)->Arg(1024);

void BM_McShaneExtend(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto space = random_space(n, 31);
    std::vector<int> anchor_idx;
    for (int i = 0; i < n; i += 4) anchor_idx.push_back(i);
    AnchoredFunction fn;
    fn.anchors = anchor_idx;
    fn.M = 1.0;
    for (int i : anchor_idx) fn.values.push_back(space->point(i)[0]);
    for (auto _ : state)
        benchmark::DoNotOptimize(mcshane_extend_all(fn, *space));
}
BENCHMARK(BM_McShaneExtend)->Arg(64)->Arg(256);

} // namespace

BENCHMARK_MAIN();
