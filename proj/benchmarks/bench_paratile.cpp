#include <benchmark/benchmark.h>

#include "paratile/paratile.hpp"

using namespace paratile;

namespace {

Mat from_ints(std::initializer_list<std::initializer_list<long>> rows) {
    Mat m;
    for (auto r : rows) m.push_back(to_vec(r));
    return m;
}

const Mat& lattice_gram(int which) {
    static const std::vector<Mat> grams{
        from_ints({{2, -1}, {-1, 2}}),
        from_ints({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}),
        from_ints({{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}}),
        from_ints({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}),
    };
    return grams[static_cast<std::size_t>(which)];
}

void BM_DvCell(benchmark::State& state) {
    Lattice l = Lattice::from_gram(lattice_gram(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(dv_cell(l));
}
BENCHMARK(BM_DvCell)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_BuildComplex(benchmark::State& state) {
    Lattice l = Lattice::from_gram(lattice_gram(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(build_complex(l));
}
BENCHMARK(BM_BuildComplex)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_RunAllCases(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_all_cases(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_RunAllCases)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ConePipeline(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cone_test_pipeline());
}
BENCHMARK(BM_ConePipeline)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
