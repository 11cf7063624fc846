// Microbenchmarks for the counting, character, and verification pipelines.

#include <benchmark/benchmark.h>

#include "cclab/catalog.hpp"
#include "cclab/ccmap.hpp"
#include "cclab/grassmannian.hpp"
#include "cclab/mutation.hpp"
#include "cclab/verify.hpp"

using namespace cclab;

namespace {

QuiverPtr a3() { return parse_quiver("vertices: 3\narrow a: 1 -> 2\narrow b: 2 -> 3"); }
QuiverPtr d4()
{
    return parse_quiver("vertices: 4\narrow b: 2 -> 1\narrow c: 3 -> 1\narrow d: 4 -> 1");
}
QuiverPtr kron() { return parse_quiver("vertices: 2\narrow a: 1 -> 2\narrow b: 1 -> 2"); }

const Catalog& kron_catalog()
{
    static Catalog cat = Catalog::build(kron(), 3, 6);
    return cat;
}

} // namespace

static void BM_CountSubreps(benchmark::State& state)
{
    // middle Grassmannian layer of the length-n Jordan tube module over F_101
    const int n = (int)state.range(0);
    const Catalog& cat = kron_catalog();
    Rep<GF> M = cat.reduce(101).members[cat.find("u[0](" + std::to_string(n) + ")")];
    DimVec e{n / 2, (n + 1) / 2};
    for (auto _ : state) benchmark::DoNotOptimize(count_subreps(M, e));
}
BENCHMARK(BM_CountSubreps)->DenseRange(2, 6);

static void BM_GrassmannianProfileD4(benchmark::State& state)
{
    // the dimension-(2,1,1,1) indecomposable has the richest profile on D4
    Catalog cat = Catalog::build(d4());
    int idx = -1;
    for (int i = 0; i < cat.size(); ++i)
        if (cat.member(i).dims() == DimVec{2, 1, 1, 1}) idx = i;
    Rep<QQ> big = cat.member(idx).rep;
    for (auto _ : state) benchmark::DoNotOptimize(grassmannian_profile(big));
}
BENCHMARK(BM_GrassmannianProfileD4);

static void BM_CCModule(benchmark::State& state)
{
    const int n = (int)state.range(0);
    const Catalog& cat = kron_catalog();
    Rep<QQ> M = cat.member(cat.find("u[0](" + std::to_string(n) + ")")).rep;
    for (auto _ : state) benchmark::DoNotOptimize(cc_module(M));
}
BENCHMARK(BM_CCModule)->DenseRange(1, 5);

static void BM_CatalogDecompose(benchmark::State& state)
{
    const Catalog& cat = kron_catalog();
    auto cmp = cat.reduce(101);
    Rep<GF> sum = direct_sum(cmp.members[cat.find("u[0](3)")],
                             direct_sum(cmp.members[cat.find("P1")],
                                        cmp.members[cat.find("u[1](2)")]));
    for (auto _ : state) benchmark::DoNotOptimize(cmp.decompose(sum));
}
BENCHMARK(BM_CatalogDecompose);

static void BM_StratifyExt(benchmark::State& state)
{
    // two-dimensional Ext with a negative stratum
    Catalog cat = Catalog::build(d4());
    int m = cat.find("I1"), n = cat.find("S1");
    for (auto _ : state) benchmark::DoNotOptimize(stratify_ext(cat, m, n));
}
BENCHMARK(BM_StratifyExt);

static void BM_VerifyThm1(benchmark::State& state)
{
    Catalog cat = Catalog::build(a3());
    int m = cat.find("S2"), n = cat.find("S3");
    for (auto _ : state) {
        CCContext ctx(cat);
        benchmark::DoNotOptimize(verify_theorem_part1(ctx, m, n));
    }
}
BENCHMARK(BM_VerifyThm1);

static void BM_VerifyHoa(benchmark::State& state)
{
    const Catalog& cat = kron_catalog();
    int u0 = cat.find("u[0]");
    for (auto _ : state) {
        CCContext ctx(cat);
        benchmark::DoNotOptimize(verify_high_order_assoc(ctx, u0, u0));
    }
}
BENCHMARK(BM_VerifyHoa);

static void BM_MutationOracle(benchmark::State& state)
{
    QuiverPtr q = a3();
    for (auto _ : state) benchmark::DoNotOptimize(fz_mutation_oracle(q));
}
BENCHMARK(BM_MutationOracle);

BENCHMARK_MAIN();
