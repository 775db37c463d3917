#include <benchmark/benchmark.h>

#include "abelkernel/verify.hpp"

using namespace abelkernel;

namespace {

DiscretizedMeasure three_atoms()
{
    return discretize(MeasureSpec::atomic({{CirclePoint(0.0), 1.0 / 3}, {CirclePoint(1.0 / 3), 1.0 / 3},
                                           {CirclePoint(2.0 / 3), 1.0 / 3}}),
                      1);
}

void BM_AbelLimitScalar(benchmark::State& state)
{
    const auto grid = SGrid::geometric();
    for (auto _ : state) {
        auto r = abel_pairing(SequenceMap::ones_row(), SequenceMap::alternating_column(), SeqVector({1.0}),
                              SeqVector({1.0}), grid);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_AbelLimitScalar);

void BM_SynthesisDampedIdentity(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    auto leb = discretize(MeasureSpec::lebesgue(), 512);
    const auto C = CoeffMatrix::identity(n);
    const auto v = SeqVector::geometric(cplx(0.3, 0.4), n);
    for (auto _ : state) {
        auto f = synthesis_damped(C, v, 0.99, leb, true);
        benchmark::DoNotOptimize(f.values().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SynthesisDampedIdentity)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_MembershipRankOne(benchmark::State& state)
{
    auto m = three_atoms();
    const std::vector<cplx> x{{1.0, 0.0}, {0.5, 0.25}, {0.0, -0.3}, {-0.2, 0.1}, {0.125, 0.0}};
    const auto C = rank_one_from_coeffs(x, m, true);
    const auto set = DiscSampleSet::default_set();
    for (auto _ : state) {
        auto v = membership_test(C, m, set, {1e-8});
        benchmark::DoNotOptimize(v.max_residual);
    }
}
BENCHMARK(BM_MembershipRankOne)->Unit(benchmark::kMillisecond);

void BM_MembershipSzego(benchmark::State& state)
{
    auto leb = discretize(MeasureSpec::lebesgue(), 512);
    const auto C = CoeffMatrix::identity(64);
    const auto set = DiscSampleSet::default_set();
    for (auto _ : state) {
        auto v = membership_test(C, leb, set, {1e-8});
        benchmark::DoNotOptimize(v.max_residual);
    }
}
BENCHMARK(BM_MembershipSzego)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
