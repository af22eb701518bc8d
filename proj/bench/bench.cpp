#include "fermat/certify.hpp"
#include "fermat/dd.hpp"
#include "fermat/local_zeta.hpp"
#include <benchmark/benchmark.h>

using namespace fermat;

// each kernel runs with arg 0 = serial reference, 1 = OpenMP
static Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

static void BM_count_points(benchmark::State& st) {
    auto F = make_field(1009, 2);
    for (auto _ : st) benchmark::DoNotOptimize(count_points(Curve::C, 3, 5, F, mode(st)).projective());
}
BENCHMARK(BM_count_points)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_hecke_coeffs(benchmark::State& st) {
    auto spec = hecke_for_delta(5);
    for (auto _ : st) benchmark::DoNotOptimize(hecke_coeffs(spec, 200000, mode(st)).c.size());
}
BENCHMARK(BM_hecke_coeffs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_point_search(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(point_search(6, 2000, mode(st)).size());
}
BENCHMARK(BM_point_search)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_z_series(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(z_series(300, 1000, false, mode(st)).a.size());
}
BENCHMARK(BM_z_series)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_mean_value(benchmark::State& st) {
    mean_value_check(50);   // memoized Euler products stay out of the timing
    for (auto _ : st) benchmark::DoNotOptimize(mean_value_check(300, mode(st)).lhs);
}
BENCHMARK(BM_mean_value)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
