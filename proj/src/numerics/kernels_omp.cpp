#include "advnids/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>

namespace advnids::kernels {

namespace {
#ifdef ADVNIDS_HAVE_OPENMP
std::atomic<bool> g_parallel{true};
#else
std::atomic<bool> g_parallel{false};
#endif
} // namespace

bool parallel_enabled() noexcept { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool enabled) noexcept {
    g_parallel.store(enabled, std::memory_order_relaxed);
}

namespace omp {

// Loop counters are signed for OpenMP 2.x compatibility.
using index_t = std::int64_t;

void gemm_nn(std::span<const double> a, std::span<const double> b, std::span<double> c,
             std::size_t m, std::size_t k, std::size_t n) {
    const auto rows = static_cast<index_t>(m);
#pragma omp parallel for schedule(static)
    for (index_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* ci = c.data() + i * n;
        std::fill(ci, ci + n, 0.0);
        for (std::size_t t = 0; t < k; ++t) {
            const double ait = a[i * k + t];
            const double* bt = b.data() + t * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += ait * bt[j];
        }
    }
}

void gemm_tn(std::span<const double> a, std::span<const double> b, std::span<double> c,
             std::size_t m, std::size_t k, std::size_t n) {
    const auto rows = static_cast<index_t>(m);
#pragma omp parallel for schedule(static)
    for (index_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* ci = c.data() + i * n;
        std::fill(ci, ci + n, 0.0);
        for (std::size_t t = 0; t < k; ++t) {
            const double ati = a[t * m + i];
            const double* bt = b.data() + t * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += ati * bt[j];
        }
    }
}

void gemm_nt(std::span<const double> a, std::span<const double> b, std::span<double> c,
             std::size_t m, std::size_t k, std::size_t n) {
    const auto rows = static_cast<index_t>(m);
#pragma omp parallel for schedule(static)
    for (index_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const double* ai = a.data() + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double* bj = b.data() + j * k;
            double acc = 0.0;
            for (std::size_t t = 0; t < k; ++t) acc += ai[t] * bj[t];
            c[i * n + j] = acc;
        }
    }
}

void binary(BinaryOp op, std::span<const double> a, std::span<const double> b,
            std::span<double> out) {
    const auto n = static_cast<index_t>(out.size());
    switch (op) {
    case BinaryOp::add:
#pragma omp parallel for schedule(static)
        for (index_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
        break;
    case BinaryOp::sub:
#pragma omp parallel for schedule(static)
        for (index_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
        break;
    case BinaryOp::mul:
#pragma omp parallel for schedule(static)
        for (index_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
        break;
    }
}

void unary(UnaryOp op, const UnaryArgs& args, std::span<const double> a, std::span<double> out) {
    const auto n = static_cast<index_t>(out.size());
    switch (op) {
    case UnaryOp::sign:
#pragma omp parallel for schedule(static)
        for (index_t i = 0; i < n; ++i) out[i] = sign_of(a[i]);
        break;
    case UnaryOp::scale:
#pragma omp parallel for schedule(static)
        for (index_t i = 0; i < n; ++i) out[i] = a[i] * args.factor;
        break;
    case UnaryOp::clip:
#pragma omp parallel for schedule(static)
        for (index_t i = 0; i < n; ++i) out[i] = std::clamp(a[i], args.lo, args.hi);
        break;
    }
}

void signed_step(std::span<const double> x, std::span<const double> grad, double eps, double lo,
                 double hi, std::span<double> out) {
    const auto n = static_cast<index_t>(out.size());
#pragma omp parallel for schedule(static)
    for (index_t i = 0; i < n; ++i)
        out[i] = step_coordinate(x[i], grad[i], eps, lo, hi);
}

} // namespace omp
} // namespace advnids::kernels
