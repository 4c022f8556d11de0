#include "bzl/asymptotics.hpp"
#include "bzl/cp1.hpp"
#include "bzl/formal_integral.hpp"
#include "bzl/sov.hpp"

#include <benchmark/benchmark.h>

using namespace bzl;

namespace {

using J = Jet<QQi>;

J gaussian_phase(const VarsPtr &v, int order) {
    J j(v, order);
    j.set(MultiIndex{2, 0}, qq(-1));
    j.set(MultiIndex{0, 2}, qq(-2));
    j.set(MultiIndex{1, 1}, qq(1, 3));
    j.set(MultiIndex{3, 0}, qq(1, 2));
    j.set(MultiIndex{1, 2}, qq(-1, 5));
    j.set(MultiIndex{0, 4}, qq(1, 7));
    return j;
}

void BM_JetMultiply(benchmark::State &st) {
    int order = static_cast<int>(st.range(0));
    auto v = real_vars(2);
    J a = gaussian_phase(v, order), b = a.one() + a;
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(6)->Arg(10)->Arg(14);

void BM_FormalIntegralRecursion(benchmark::State &st) {
    int N = static_cast<int>(st.range(0));
    auto v = real_vars(2);
    J phim1 = gaussian_phase(v, kExact);
    using JS = NuSeries<J>;
    PhasePair<QQi> p{JS(-1, {phim1}, kExact, phim1.zero()), JS(0, {phim1.one()}, kExact, phim1.zero()), QQi()};
    for (auto _ : st) benchmark::DoNotOptimize(formal_integral_recursion(p, N));
}
BENCHMARK(BM_FormalIntegralRecursion)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_FormalIntegralWick(benchmark::State &st) {
    int N = static_cast<int>(st.range(0));
    auto v = real_vars(2);
    J phim1 = gaussian_phase(v, kExact);
    using JS = NuSeries<J>;
    PhasePair<QQi> p{JS(-1, {phim1}, kExact, phim1.zero()), JS(0, {phim1.one()}, kExact, phim1.zero()), QQi()};
    for (auto _ : st) benchmark::DoNotOptimize(formal_integral_wick(p, N));
}
BENCHMARK(BM_FormalIntegralWick)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_FormalBerezinTransform(benchmark::State &st) {
    auto G = fubini_study_germ(QQi(Rational(1, 2), Rational(-1, 3)));
    for (auto _ : st) benchmark::DoNotOptimize(formal_berezin_transform(G, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_FormalBerezinTransform)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_StarExtraction(benchmark::State &st) {
    int M = static_cast<int>(st.range(0));
    auto G = fubini_study_germ(QQi());
    for (auto _ : st) benchmark::DoNotOptimize(extract_star_coefficients(formal_berezin_family(G, 2, M), formal_twisted_family(G, 2, M)));
}
BENCHMARK(BM_StarExtraction)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ToeplitzMatrix(benchmark::State &st) {
    auto f = cp1::symbol_by_name("quadratic");
    for (auto _ : st) benchmark::DoNotOptimize(cp1::toeplitz_matrix(f, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_ToeplitzMatrix)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_BerezinExact(benchmark::State &st) {
    auto f = cp1::symbol_by_name("quadratic");
    QQi x(Rational(-1, 3), Rational(1, 4));
    for (auto _ : st) benchmark::DoNotOptimize(cp1::berezin_transform_m_exact(f, x, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_BerezinExact)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_BerezinDouble(benchmark::State &st) {
    auto f = cp1::symbol_by_name("quadratic");
    auto x = cp1::HPoint::affine(cd(-1.0 / 3, 0.25));
    for (auto _ : st) benchmark::DoNotOptimize(cp1::berezin_transform_m(f, x, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_BerezinDouble)->RangeMultiplier(2)->Range(16, 128);

void BM_OperatorNorm(benchmark::State &st) {
    auto T = cp1::toeplitz_matrix(cp1::symbol_by_name("quadratic"), static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(cp1::operator_norm(T));
}
BENCHMARK(BM_OperatorNorm)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_InversePowerFit(benchmark::State &st) {
    std::vector<double> grid{16, 24, 32, 48, 64, 96, 128}, vals;
    for (double m : grid) vals.push_back(1 / (m + 2));
    for (auto _ : st) benchmark::DoNotOptimize(asym::fit_inverse_powers(grid, vals, static_cast<int>(st.range(0)), 0));
}
BENCHMARK(BM_InversePowerFit)->DenseRange(3, 5);

} // namespace
BENCHMARK_MAIN();
