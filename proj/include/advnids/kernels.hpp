#pragma once

#include <algorithm>
#include <cmath>

// Raw dense kernels over row-major storage. Every kernel exists twice:
// `serial` is the reference used by tests, `omp` splits rows across
// OpenMP threads. Each output element is produced by exactly one thread
// with the same accumulation order as the serial kernel, so the two are
// bitwise identical for any thread count.

#include <cstddef>
#include <span>

namespace advnids::kernels {

enum class BinaryOp { add, sub, mul };

enum class UnaryOp { sign, scale, clip };

struct UnaryArgs {
    double factor = 1.0; // scale
    double lo = 0.0;     // clip
    double hi = 0.0;     // clip
};

#define ADVNIDS_KERNEL_DECLS                                                                      \
    /* c[m x n] = a[m x k] * b[k x n], k ascending */                                             \
    void gemm_nn(std::span<const double> a, std::span<const double> b, std::span<double> c,       \
                 std::size_t m, std::size_t k, std::size_t n);                                    \
    /* c[m x n] = a[k x m]^T * b[k x n], k ascending */                                           \
    void gemm_tn(std::span<const double> a, std::span<const double> b, std::span<double> c,       \
                 std::size_t m, std::size_t k, std::size_t n);                                    \
    /* c[m x n] = a[m x k] * b[n x k]^T, k ascending */                                           \
    void gemm_nt(std::span<const double> a, std::span<const double> b, std::span<double> c,       \
                 std::size_t m, std::size_t k, std::size_t n);                                    \
    void binary(BinaryOp op, std::span<const double> a, std::span<const double> b,                \
                std::span<double> out);                                                           \
    void unary(UnaryOp op, const UnaryArgs& args, std::span<const double> a, std::span<double> out); \
    /* out[i] = step_coordinate(x[i], grad[i], eps, lo, hi) */                                               \
    void signed_step(std::span<const double> x, std::span<const double> grad, double eps,         \
                     double lo, double hi, std::span<double> out);

namespace serial {
ADVNIDS_KERNEL_DECLS
}

namespace omp {
ADVNIDS_KERNEL_DECLS
}

#undef ADVNIDS_KERNEL_DECLS

/// Whether library operations route through the OpenMP kernels. Defaults to
/// true when built with OpenMP. Results do not depend on this setting.
bool parallel_enabled() noexcept;
void set_parallel_enabled(bool enabled) noexcept;

inline double sign_of(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// clamp(x + eps * sign(g), lo, hi). Rounding of the sum can overshoot eps
/// by half an ulp of x; such results are pulled back one ulp toward x so the
/// displacement never exceeds eps.
inline double step_coordinate(double x, double g, double eps, double lo, double hi) noexcept {
    double y = x + eps * sign_of(g);
    if (std::abs(y - x) > eps) y = std::nextafter(y, x);
    return std::clamp(y, lo, hi);
}

} // namespace advnids::kernels
