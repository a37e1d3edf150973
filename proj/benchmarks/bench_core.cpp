// Hot-path timings: Gram assembly dominates experiment cost, the solver
// and dual-weight paths dominate per-layer work.

#include <benchmark/benchmark.h>

#include "mzq/approx.hpp"
#include "mzq/experiment.hpp"
#include "mzq/quadrature.hpp"

namespace {

using namespace mzq;

void bm_assemble(benchmark::State& state) {
    Basis basis = Basis::fourier();
    int n = static_cast<int>(state.range(0));
    Layer layer = generate_jittered(basis, n, 2.0, 0.25, 7);
    for (auto _ : state) {
        GramSystem gram = assemble(basis, layer);
        benchmark::DoNotOptimize(gram.b_n);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_assemble)->Arg(16)->Arg(64)->Arg(256)->Complexity();

void bm_quasi_interpolant(benchmark::State& state) {
    Basis basis = Basis::fourier();
    int n = static_cast<int>(state.range(0));
    Layer layer = generate_jittered(basis, n, 2.0, 0.25, 7);
    GramSystem gram = assemble(basis, layer);
    CoeffFunction f = CoeffFunction::sobolev(basis, 1.2);
    Eigen::VectorXcd samples = f.sample(layer);
    for (auto _ : state) {
        PolyCoeffs p = quasi_interpolant(gram, samples);
        benchmark::DoNotOptimize(p.a);
    }
}
BENCHMARK(bm_quasi_interpolant)->Arg(16)->Arg(64)->Arg(256);

void bm_dual_weights(benchmark::State& state) {
    Basis basis = Basis::legendre();
    int n = static_cast<int>(state.range(0));
    Layer layer = generate_jittered(basis, n, 2.0, 0.25, 7);
    GramSystem gram = assemble(basis, layer);
    for (auto _ : state) {
        QuadRule rule = dual_weights(gram);
        benchmark::DoNotOptimize(rule.w);
    }
}
BENCHMARK(bm_dual_weights)->Arg(16)->Arg(64)->Arg(256);

void bm_error_function_phi(benchmark::State& state) {
    Basis basis = Basis::legendre();
    int n = static_cast<int>(state.range(0));
    WeylFit fit = fit_weyl(basis, std::vector<double>{8, 16, 32, 64, 128});
    TailOptions opts;
    opts.weyl = &fit;
    for (auto _ : state) {
        PhiValue phi = error_function_phi(basis, 1.5, n, opts);
        benchmark::DoNotOptimize(phi.value);
    }
}
BENCHMARK(bm_error_function_phi)->Arg(16)->Arg(128);

void bm_eval_all(benchmark::State& state) {
    Basis basis = Basis::chebyshev();
    int dim = basis.dim(static_cast<int>(state.range(0)));
    double x = 0.123456;
    for (auto _ : state) {
        auto values = basis.eval_all(dim, x);
        benchmark::DoNotOptimize(values.data());
    }
}
BENCHMARK(bm_eval_all)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
