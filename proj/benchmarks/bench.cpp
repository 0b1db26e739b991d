#include <benchmark/benchmark.h>

#include <graphmat/graph_matrix.hpp>
#include <graphmat/norm_bounds.hpp>
#include <graphmat/pseudo_moments.hpp>
#include <graphmat/random_graph.hpp>
#include <graphmat/shape.hpp>

using namespace graphmat;

static void BM_Materialize_Z(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PrunedGraph g = trim_high_degree(sample_gnp(n, 5.0, 1), 10.0, 5.0);
    const Shape z = z_shape();
    for (auto _ : state)
        benchmark::DoNotOptimize(materialize(z, g));
    state.SetComplexityN(n);
}
BENCHMARK(BM_Materialize_Z)->Arg(12)->Arg(16)->Arg(20)->Complexity();

static void BM_LineNorm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PrunedGraph g = trim_high_degree(sample_gnp(n, 10.0, 1), 10.0, 10.0);
    const LineOperator op = line_operator(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(empirical_norm(op, 1e-6, 500, 7));
}
BENCHMARK(BM_LineNorm)->Arg(1024)->Arg(4096);

static void BM_PeValue(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PrunedGraph g = trim_high_degree(sample_gnp(n, 10.0, 1), 10.0, 10.0);
    MomentParams mp;
    const std::vector<int> support = {g.survivors[0], g.survivors[1]};
    for (auto _ : state)
        benchmark::DoNotOptimize(pe_value(support, g, mp));
}
BENCHMARK(BM_PeValue)->Arg(200)->Arg(2000);

static void BM_CorpusEnumeration(benchmark::State& state) {
    const int cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        long count = 0;
        for_each_corpus_shape(cap, [&](const Shape&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_CorpusEnumeration)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
