#include <benchmark/benchmark.h>

#include "orbitflow/clt_stats.hpp"
#include "orbitflow/lfunc.hpp"
#include "orbitflow/model_io.hpp"

using namespace orbitflow;

namespace {

ShiftModel gold() { return bundled_model("m-gold"); }

void BM_enumerate(benchmark::State& state) {
    const auto model = gold();
    const int n_max = static_cast<int>(state.range(0));
    std::uint64_t total = 0;
    for (auto _ : state) {
        std::uint64_t count = 0;
        enumerate_prime_orbits(model, n_max,
                               [&](const OrbitRecord&, std::span<const int>) { ++count; });
        benchmark::DoNotOptimize(count);
        total = count;
    }
    state.SetItemsProcessed(static_cast<int64_t>(total) * state.iterations());
}
BENCHMARK(BM_enumerate)->Arg(16)->Arg(20)->Arg(24);

void BM_enumerate_sharded(benchmark::State& state) {
    const auto model = gold();
    for (auto _ : state) {
        std::uint64_t count = 0;
        auto sink = [&](const OrbitRecord&, std::span<const int>) { ++count; };
        enumerate_sharded(model, 20, OrbitSinkRef::of(sink, false),
                          static_cast<int>(state.range(0)), 2);
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_enumerate_sharded)->Arg(1)->Arg(4)->Arg(8);

void BM_base_pressure(benchmark::State& state) {
    const auto model = gold();
    const EdgeFunction g = Eigen::MatrixXd::Zero(2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(base_pressure(model, g).P);
}
BENCHMARK(BM_base_pressure);

void BM_flow_pressure(benchmark::State& state) {
    const auto model = gold();
    for (auto _ : state) benchmark::DoNotOptimize(flow_pressure(model, 0.25));
}
BENCHMARK(BM_flow_pressure);

void BM_clt_parameters(benchmark::State& state) {
    const auto model = gold();
    for (auto _ : state) benchmark::DoNotOptimize(clt_parameters(model).sigma2);
}
BENCHMARK(BM_clt_parameters);

void BM_l_det(benchmark::State& state) {
    const auto model = gold();
    for (auto _ : state) benchmark::DoNotOptimize(l_det(model, Complex(1.1, 2.3), 0.3).det);
}
BENCHMARK(BM_l_det);

void BM_find_pole(benchmark::State& state) {
    const auto model = gold();
    for (auto _ : state) benchmark::DoNotOptimize(find_pole(model, 0.3).s);
}
BENCHMARK(BM_find_pole);

void BM_ks(benchmark::State& state) {
    const auto model = gold();
    const auto clt = clt_parameters(model);
    const auto src = model_source(model, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto report =
            empirical_cdf_ks(src, clt, BallSelect{static_cast<double>(state.range(0))},
                             Scaling::per_orbit);
        benchmark::DoNotOptimize(report.ks);
    }
}
BENCHMARK(BM_ks)->Arg(14)->Arg(18);

}  // namespace

BENCHMARK_MAIN();
