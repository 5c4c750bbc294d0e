#include <benchmark/benchmark.h>

#include <cmath>

#include "bihar/analysis.hpp"

using namespace bihar;

namespace {

void BM_critical_exponent_pc(benchmark::State& state) {
    for (auto _ : state) {
        auto pc = critical_exponent_pc(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(pc);
    }
}
BENCHMARK(BM_critical_exponent_pc)->Arg(13)->Arg(30);

void BM_eigenvalues(benchmark::State& state) {
    ProblemParams pp(5, 10);
    for (auto _ : state) {
        auto sd = eigenvalues(pp);
        benchmark::DoNotOptimize(sd);
    }
}
BENCHMARK(BM_eigenvalues);

void BM_nu2_eigenvector(benchmark::State& state) {
    ProblemParams pp(5, 10);
    for (auto _ : state) {
        auto t = nu2_eigenvector(pp);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_nu2_eigenvector);

void BM_radial_track_singular(benchmark::State& state) {
    ProblemParams pp(5, 10);
    auto st0 = singular_state(pp, 1.0);
    OdeOptions opt;
    opt.rel_tol = opt.abs_tol = 1e-12;
    opt.store_dense = false;
    for (auto _ : state) {
        auto traj = integrate_radial(pp, st0, 3.0, opt);
        benchmark::DoNotOptimize(traj);
    }
}
BENCHMARK(BM_radial_track_singular);

void BM_classify_shot(benchmark::State& state) {
    ProblemParams pp(5, 10);
    for (auto _ : state) {
        auto shot = classify_shot(pp, -0.09);
        benchmark::DoNotOptimize(shot);
    }
}
BENCHMARK(BM_classify_shot);

void BM_find_gamma_bar(benchmark::State& state) {
    ProblemParams pp(5, 10);
    double rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto br = find_gamma_bar(pp, rel_tol);
        benchmark::DoNotOptimize(br);
    }
}
BENCHMARK(BM_find_gamma_bar)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_estimate_lambda_sigma(benchmark::State& state) {
    ProblemParams pp(5, 10);
    for (auto _ : state) {
        auto est = estimate_lambda_sigma(pp);
        benchmark::DoNotOptimize(est);
    }
}
BENCHMARK(BM_estimate_lambda_sigma)->Unit(benchmark::kMillisecond);

void BM_cone_test(benchmark::State& state) {
    ProblemParams pp(5, 10);
    for (auto _ : state) {
        auto rep = cone_test(pp, +1);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_cone_test);

void BM_oscillation_report(benchmark::State& state) {
    ProblemParams pp(5, 10);
    auto br = find_gamma_bar(pp, 1e-10);
    auto shot = classify_shot(pp, br.mid());
    for (auto _ : state) {
        auto rep = oscillation_report(pp, shot.w);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_oscillation_report)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
