#include "corpus.hpp"

#include "wildcycle/document.hpp"
#include "wildcycle/nearby.hpp"
#include "wildcycle/regular.hpp"
#include "wildcycle/turrittin.hpp"

#include <benchmark/benchmark.h>

using namespace wildcycle;

namespace {

const std::vector<wctest::CorpusCase>& corpus()
{
    static const auto cs = wctest::decomposition_corpus();
    return cs;
}

void BM_SeriesProduct(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    std::vector<ParamScalar> a, b;
    for (int k = 0; k < n; ++k) {
        a.push_back(ParamScalar(k + 1) + ParamScalar::lambda());
        b.push_back(ParamScalar(Cyclotomic::zeta(3, k)));
    }
    Series x = Series::from_coeffs(1, -2, a, n - 2), y = Series::from_coeffs(1, 0, b, n);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_SeriesProduct)->Arg(8)->Arg(16)->Arg(32);

void BM_ParseDocument(benchmark::State& state)
{
    std::string text = print_document(document_from_connection(corpus()[0].input));
    for (auto _ : state) benchmark::DoNotOptimize(document_connection(parse_document(text)));
}
BENCHMARK(BM_ParseDocument);

void BM_FormalDecompose(benchmark::State& state)
{
    const auto& c = corpus()[static_cast<size_t>(state.range(0))];
    state.SetLabel(c.name);
    for (auto _ : state) benchmark::DoNotOptimize(formal_decompose(c.input));
}
BENCHMARK(BM_FormalDecompose)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_DeligneTable(benchmark::State& state)
{
    const auto& c = corpus()[static_cast<size_t>(state.range(0))];
    state.SetLabel(c.name);
    for (auto _ : state) benchmark::DoNotOptimize(deligne_nearby_cycles(c.input));
}
BENCHMARK(BM_DeligneTable)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_RegularityTest(benchmark::State& state)
{
    static const auto cs = wctest::regularity_corpus();
    const auto& c = cs[static_cast<size_t>(state.range(0))];
    state.SetLabel(c.name);
    for (auto _ : state) benchmark::DoNotOptimize(regularity_test(c.input));
}
BENCHMARK(BM_RegularityTest)->Arg(0)->Arg(12)->Arg(22)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
