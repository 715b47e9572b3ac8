// benchmarks_main.cpp — Microbenchmarks for the dense kernels that dominate
// scenario runtime: matrix exponentials, staircase propagation, Feshbach
// eigen-consistency, and Schmidt analysis.

#include <benchmark/benchmark.h>

#include "multitime/partitions.hpp"
#include "multitime/propagation.hpp"
#include "multitime/tensorprod.hpp"

using namespace multitime;

namespace {

Projector seeded_projector(Index dim, Index rank, std::uint64_t seed) {
    const auto pairs = eigendecompose(random_hermitian(dim, seed));
    std::vector<StateVector> columns;
    for (Index i = 0; i < rank; ++i) columns.push_back(pairs[static_cast<std::size_t>(i)].vector);
    return projector_from_basis(columns);
}

void BM_MatrixExponentialHermitian(benchmark::State& state) {
    const Operator h = random_hermitian(state.range(0), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matrix_exponential(h, Complex(0.0, -0.5)));
    }
}
BENCHMARK(BM_MatrixExponentialHermitian)->Arg(4)->Arg(16)->Arg(64);

void BM_MatrixExponentialPade(benchmark::State& state) {
    Matrix m = random_hermitian(state.range(0), 7).matrix();
    m(0, 1) += Complex(0.0, 0.3);  // break Hermiticity to hit the Pade path
    const Operator h{m};
    for (auto _ : state) {
        benchmark::DoNotOptimize(matrix_exponential(h, Complex(0.0, -0.5)));
    }
}
BENCHMARK(BM_MatrixExponentialPade)->Arg(4)->Arg(16)->Arg(64);

void BM_StaircasePropagation(benchmark::State& state) {
    const int steps = static_cast<int>(state.range(0));
    const TimeDependentOperator driven(1, 8,
                                       {{CoefficientFunction::sine(0, 1.0, 1.0),
                                         random_hermitian(8, 3)},
                                        {CoefficientFunction::cosine(0, 1.0, 1.0),
                                         random_hermitian(8, 4)}});
    const HamiltonianFamily family({driven});
    Vector psi0 = Vector::Zero(8);
    psi0(0) = 1.0;
    const MultiTimeState initial{StateVector(psi0), {0.0}};
    const TimePath path({0.0}, {{0, 1.0, steps}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(family, initial, path));
    }
}
BENCHMARK(BM_StaircasePropagation)->Arg(10)->Arg(100);

void BM_FeshbachEigenconsistency(benchmark::State& state) {
    const Index dim = state.range(0);
    const Operator h = random_hermitian(dim, 11);
    const Projector p = seeded_projector(dim, dim / 2, 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(feshbach_eigenconsistency(h, p));
    }
}
BENCHMARK(BM_FeshbachEigenconsistency)->Arg(8)->Arg(16);

void BM_SchmidtEntropy(benchmark::State& state) {
    const Index d = state.range(0);
    Vector amps = Vector::Zero(d * d);
    for (Index k = 0; k < d; ++k) amps(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
    const BipartiteState psi(d, d, amps);
    for (auto _ : state) {
        benchmark::DoNotOptimize(entanglement_entropy(psi));
    }
}
BENCHMARK(BM_SchmidtEntropy)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
