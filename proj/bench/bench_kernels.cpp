// Serial reference against the OpenMP path for the grid kernels.
// Arg 0 = serial, 1 = parallel.
#include "opdil/domains.hpp"
#include "opdil/fundamentals.hpp"
#include "opdil/gallery.hpp"
#include "opdil/opcore.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace opdil;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

Mat random_matrix(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

void BM_numerical_radius(benchmark::State& s) {
    Mat a = random_matrix(static_cast<int>(s.range(1)), 1);
    NumericalRadiusOptions opt;
    opt.exec = exec_of(s);
    for (auto _ : s) benchmark::DoNotOptimize(numerical_radius(a, opt));
}
BENCHMARK(BM_numerical_radius)->ArgsProduct({{0, 1}, {8, 32}})->Unit(benchmark::kMillisecond);

void BM_mu_gamma7(benchmark::State& s) {
    Mat a = random_matrix(3, 2) * 0.4;
    MuOptions opt;
    opt.exec = exec_of(s);
    for (auto _ : s) benchmark::DoNotOptimize(mu_E_detail(a, gamma7_structure(), opt).value);
}
BENCHMARK(BM_mu_gamma7)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_mu_gamma5(benchmark::State& s) {
    Mat a = random_matrix(3, 3) * 0.4;
    MuOptions opt;
    opt.exec = exec_of(s);
    for (auto _ : s) benchmark::DoNotOptimize(mu_E_detail(a, gamma5_structure(), opt).value);
}
BENCHMARK(BM_mu_gamma5)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_chain_exam1(benchmark::State& s) {
    Exam1Data e = exam1_data(8);
    ChainOptions opt;
    opt.z_samples = 8;
    opt.exec = exec_of(s);
    for (auto _ : s) benchmark::DoNotOptimize(chain_report(TupleKind::gamma7, e.tuple, opt).verdict);
}
BENCHMARK(BM_chain_exam1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
