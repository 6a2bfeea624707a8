// Parallel kernels against their serial twins.
#include <benchmark/benchmark.h>

#include "sobcurve/measure_io.hpp"
#include "sobcurve/muckenhoupt.hpp"
#include "sobcurve/numerics.hpp"
#include "sobcurve/parallel.hpp"

using namespace sobcurve;

namespace {

const VectorialMeasure& jacobi() {
    static VectorialMeasure mu = load_measure(std::string(SOBCURVE_DATA_DIR) + "/jacobi_k1.json");
    return mu;
}

// w = x^3 on [0, 1] through a power piece
const MeasureComponent& cubic() {
    static VectorialMeasure mu = parse_measure_text(R"({"curve": {"kind": "segment", "params": {"a": [0, 0], "b": [1, 0]}},
        "p": 2, "k": 0, "components": [{"j": 0, "pieces": [{"arc": [0, 1], "form": {"type": "power", "alpha_left": 3}}]}]})");
    return mu.comp(0);
}

std::vector<double> dyadic_grid(int level) {
    size_t n = size_t{1} << level;
    std::vector<double> g(n + 1);
    for (size_t i = 0; i <= n; ++i) g[i] = static_cast<double>(i) / static_cast<double>(n);
    return g;
}

void BM_gram(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(gram_matrix(jacobi(), static_cast<int>(st.range(0))));
}

void BM_gram_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(gram_matrix_serial(jacobi(), static_cast<int>(st.range(0))));
}

void BM_cells(benchmark::State& st) {
    std::vector<double> g = dyadic_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(inverse_weight_cells(cubic(), g, 2.0));
}

void BM_cells_serial(benchmark::State& st) {
    std::vector<double> g = dyadic_grid(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(inverse_weight_cells_serial(cubic(), g, 2.0));
}

}  // namespace

BENCHMARK(BM_gram)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gram_serial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cells)->Arg(8)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cells_serial)->Arg(8)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    configure_threads();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
