// Serial reference kernels against their OpenMP counterparts, plus the
// two model-level passes that dominate training and attack time.

#include "advnids/fgsm.hpp"
#include "advnids/kernels.hpp"
#include "advnids/mlp.hpp"
#include "advnids/rng.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace advnids;

namespace {

std::vector<double> filled(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    return v;
}

template <auto Kernel>
void gemm(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const std::size_t k = 60, n = 50;
    const auto a = filled(m * k, 1), b = filled(k * n, 2);
    std::vector<double> c(m * n);
    for (auto _ : state) {
        Kernel(a, b, c, m, k, n);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m * k * n));
}

template <auto Kernel>
void gemm_tn(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const std::size_t m = 60, n = 50;
    const auto a = filled(rows * m, 3), b = filled(rows * n, 4);
    std::vector<double> c(m * n);
    for (auto _ : state) {
        Kernel(a, b, c, m, rows, n);
        benchmark::DoNotOptimize(c.data());
    }
}

template <auto Kernel>
void step(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = filled(n, 5), g = filled(n, 6);
    std::vector<double> out(n);
    for (auto _ : state) {
        Kernel(x, g, 0.001, -3.0, 3.0, out);
        benchmark::DoNotOptimize(out.data());
    }
}

struct Net {
    MlpModel model;
    Matrix x;
    Matrix y;
    std::vector<int> labels;
};

Net surrogate_net(std::size_t rows) {
    RngStream rng(7);
    const std::vector<std::size_t> hidden{60, 50, 30};
    Net net{MlpModel::initialize(MlpModel::architecture(80, hidden, Activation::relu, Activation::sigmoid), rng),
            Matrix(rows, 80), Matrix(), std::vector<int>(rows)};
    for (double& v : net.x.data()) v = rng.normal();
    for (auto& l : net.labels) l = static_cast<int>(rng.bounded(2));
    net.y = one_hot(net.labels);
    return net;
}

void backprop_pass(benchmark::State& state) {
    kernels::set_parallel_enabled(state.range(1) != 0);
    const auto net = surrogate_net(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(backprop(net.model, net.x, net.y, true, true).loss);
    kernels::set_parallel_enabled(true);
}

void fgsm_batch(benchmark::State& state) {
    kernels::set_parallel_enabled(state.range(1) != 0);
    const auto net = surrogate_net(static_cast<std::size_t>(state.range(0)));
    const ClipBounds clip = clip_bounds_from(net.x);
    for (auto _ : state) benchmark::DoNotOptimize(fgsm(net.model, net.x, net.labels, 0.0005, clip).features.data());
    kernels::set_parallel_enabled(true);
}

} // namespace

BENCHMARK(gemm<kernels::serial::gemm_nn>)->Name("gemm_nn/serial")->Arg(1024)->Arg(16384);
BENCHMARK(gemm<kernels::omp::gemm_nn>)->Name("gemm_nn/omp")->Arg(1024)->Arg(16384)->UseRealTime();
BENCHMARK(gemm_tn<kernels::serial::gemm_tn>)->Name("gemm_tn/serial")->Arg(1024)->Arg(16384);
BENCHMARK(gemm_tn<kernels::omp::gemm_tn>)->Name("gemm_tn/omp")->Arg(1024)->Arg(16384)->UseRealTime();
BENCHMARK(step<kernels::serial::signed_step>)->Name("signed_step/serial")->Arg(1 << 20);
BENCHMARK(step<kernels::omp::signed_step>)->Name("signed_step/omp")->Arg(1 << 20)->UseRealTime();
BENCHMARK(backprop_pass)->ArgNames({"rows", "parallel"})->Args({4096, 0})->Args({4096, 1})->UseRealTime();
BENCHMARK(fgsm_batch)->ArgNames({"rows", "parallel"})->Args({16384, 0})->Args({16384, 1})->UseRealTime();

BENCHMARK_MAIN();
