#include "advnids/kernels.hpp"

#include <algorithm>

namespace advnids::kernels::serial {

void gemm_nn(std::span<const double> a, std::span<const double> b, std::span<double> c,
             std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
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
    for (std::size_t i = 0; i < m; ++i) {
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
    for (std::size_t i = 0; i < m; ++i) {
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
    const std::size_t n = out.size();
    switch (op) {
    case BinaryOp::add:
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
        break;
    case BinaryOp::sub:
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
        break;
    case BinaryOp::mul:
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
        break;
    }
}

void unary(UnaryOp op, const UnaryArgs& args, std::span<const double> a, std::span<double> out) {
    const std::size_t n = out.size();
    switch (op) {
    case UnaryOp::sign:
        for (std::size_t i = 0; i < n; ++i) out[i] = sign_of(a[i]);
        break;
    case UnaryOp::scale:
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * args.factor;
        break;
    case UnaryOp::clip:
        for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(a[i], args.lo, args.hi);
        break;
    }
}

void signed_step(std::span<const double> x, std::span<const double> grad, double eps, double lo,
                 double hi, std::span<double> out) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
        out[i] = step_coordinate(x[i], grad[i], eps, lo, hi);
}

} // namespace advnids::kernels::serial
