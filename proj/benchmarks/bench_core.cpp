#include <benchmark/benchmark.h>

#include <excat/module.hpp>

#include <random>

using namespace excat;

namespace {

Mat random_mat(PrimeField f, std::size_t r, std::size_t c, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::uint32_t> de(0, f.p() - 1);
    Mat m(f, r, c);
    for (auto& e : m.entries()) e = de(rng);
    return m;
}

} // namespace

static void BM_rref(benchmark::State& state) {
    PrimeField f(std::uint32_t(state.range(0)));
    Mat a = random_mat(f, 32, 32, 42);
    for (auto _ : state) benchmark::DoNotOptimize(rref(a));
}
BENCHMARK(BM_rref)->Arg(2)->Arg(3)->Arg(5);

static void BM_mul(benchmark::State& state) {
    PrimeField f(std::uint32_t(state.range(0)));
    Mat a = random_mat(f, 64, 64, 1);
    Mat b = random_mat(f, 64, 64, 2);
    for (auto _ : state) benchmark::DoNotOptimize(a.mul(b));
}
BENCHMARK(BM_mul)->Arg(2)->Arg(3);

static void BM_hom_space(benchmark::State& state) {
    auto alg = std::make_shared<Algebra>(algebra_truncated_poly(2, std::size_t(state.range(0))));
    auto reg = Module::regular(alg);
    auto big = direct_sum({reg, reg}).sum;
    for (auto _ : state) benchmark::DoNotOptimize(hom_space(*big, *big));
}
BENCHMARK(BM_hom_space)->Arg(2)->Arg(3)->Arg(4);

static void BM_indecompose(benchmark::State& state) {
    auto alg = std::make_shared<Algebra>(algebra_truncated_poly(2, 3));
    std::vector<ModulePtr> parts;
    for (int i = 0; i < int(state.range(0)); ++i) parts.push_back(Module::regular(alg));
    auto big = direct_sum(parts).sum;
    for (auto _ : state) benchmark::DoNotOptimize(indecompose(big));
}
BENCHMARK(BM_indecompose)->Arg(1)->Arg(2);
