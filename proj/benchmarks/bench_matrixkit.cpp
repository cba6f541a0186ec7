#include <benchmark/benchmark.h>

#include <random>

#include "pqclone/matrixkit.hpp"

using namespace pqclone;

namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = Complex{dist(rng), dist(rng)};
            m(j, i) = std::conj(m(i, j));
        }
        m(i, i) = Complex{dist(rng), 0.0};
    }
    return m;
}

}  // namespace

static void BM_HermitianEig(benchmark::State& state) {
    std::mt19937 rng(1);
    const CMatrix m = random_hermitian(state.range(0), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eig(m));
    }
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_PsdSqrt(benchmark::State& state) {
    std::mt19937 rng(2);
    const CMatrix a = random_hermitian(state.range(0), rng);
    const CMatrix p = a * a.adjoint();
    for (auto _ : state) {
        benchmark::DoNotOptimize(psd_sqrt(p));
    }
}
BENCHMARK(BM_PsdSqrt)->Arg(4)->Arg(8)->Arg(16);

static void BM_LeastSquares(benchmark::State& state) {
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t dim = state.range(0);
    std::vector<CVector> basis;
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        CVector v(dim);
        for (auto& e : v) e = Complex{gauss(rng), gauss(rng)};
        basis.push_back(std::move(v));
    }
    CVector target(dim);
    for (auto& e : target) e = Complex{gauss(rng), gauss(rng)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(least_squares_in_span(basis, target));
    }
}
BENCHMARK(BM_LeastSquares)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
