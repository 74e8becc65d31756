#include "advnids/matrix.hpp"

#include "advnids/error.hpp"
#include "advnids/kernels.hpp"
#include "advnids/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace advnids {

namespace {

std::string dims(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(std::string(op) + ": shape mismatch " + dims(a) + " vs " + dims(b));
}

// Below this many multiply-adds the thread fork costs more than it saves.
constexpr std::size_t kParallelWork = 1u << 14;

bool go_parallel(std::size_t work) {
    return kernels::parallel_enabled() && work >= kParallelWork;
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (!std::isfinite(fill)) throw NumericError("Matrix: non-finite fill value");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols)
        throw ShapeError("Matrix: data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
    require_finite("Matrix construction");
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<double> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeError("Matrix::from_rows: ragged rows");
        data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= rows_) throw ShapeError("select_rows: index out of range");
        std::copy_n(data_.data() + indices[i] * cols_, cols_, out.data_.data() + i * cols_);
    }
    return out;
}

Matrix Matrix::slice_rows(std::size_t begin, std::size_t end) const {
    if (begin > end || end > rows_) throw ShapeError("slice_rows: range out of bounds");
    Matrix out(end - begin, cols_);
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>(end * cols_), out.data_.begin());
    return out;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void Matrix::require_finite(std::string_view context) const {
    if (!all_finite())
        throw NumericError(std::string(context) + ": non-finite value in " + dims(*this) +
                           " matrix");
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: inner dimensions differ (" + dims(a) + " * " + dims(b) + ")");
    Matrix c(a.rows(), b.cols());
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    if (go_parallel(m * k * n))
        kernels::omp::gemm_nn(a.data(), b.data(), c.data(), m, k, n);
    else
        kernels::serial::gemm_nn(a.data(), b.data(), c.data(), m, k, n);
    c.require_finite("matmul");
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw ShapeError("matmul_tn: row counts differ (" + dims(a) + " vs " + dims(b) + ")");
    Matrix c(a.cols(), b.cols());
    const std::size_t m = a.cols(), k = a.rows(), n = b.cols();
    if (go_parallel(m * k * n))
        kernels::omp::gemm_tn(a.data(), b.data(), c.data(), m, k, n);
    else
        kernels::serial::gemm_tn(a.data(), b.data(), c.data(), m, k, n);
    c.require_finite("matmul_tn");
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw ShapeError("matmul_nt: column counts differ (" + dims(a) + " vs " + dims(b) + ")");
    Matrix c(a.rows(), b.rows());
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
    if (go_parallel(m * k * n))
        kernels::omp::gemm_nt(a.data(), b.data(), c.data(), m, k, n);
    else
        kernels::serial::gemm_nt(a.data(), b.data(), c.data(), m, k, n);
    c.require_finite("matmul_nt");
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
    return t;
}

namespace {

Matrix binary_op(kernels::BinaryOp op, const Matrix& a, const Matrix& b, const char* name) {
    require_same_shape(a, b, name);
    Matrix out(a.rows(), a.cols());
    if (go_parallel(a.size()))
        kernels::omp::binary(op, a.data(), b.data(), out.data());
    else
        kernels::serial::binary(op, a.data(), b.data(), out.data());
    out.require_finite(name);
    return out;
}

Matrix unary_op(kernels::UnaryOp op, const kernels::UnaryArgs& args, const Matrix& a,
                const char* name) {
    Matrix out(a.rows(), a.cols());
    if (go_parallel(a.size()))
        kernels::omp::unary(op, args, a.data(), out.data());
    else
        kernels::serial::unary(op, args, a.data(), out.data());
    out.require_finite(name);
    return out;
}

} // namespace

Matrix add(const Matrix& a, const Matrix& b) { return binary_op(kernels::BinaryOp::add, a, b, "add"); }
Matrix sub(const Matrix& a, const Matrix& b) { return binary_op(kernels::BinaryOp::sub, a, b, "sub"); }
Matrix mul(const Matrix& a, const Matrix& b) { return binary_op(kernels::BinaryOp::mul, a, b, "mul"); }

Matrix scale(const Matrix& a, double factor) {
    if (!std::isfinite(factor)) throw NumericError("scale: non-finite factor");
    return unary_op(kernels::UnaryOp::scale, {.factor = factor}, a, "scale");
}

Matrix sign(const Matrix& a) { return unary_op(kernels::UnaryOp::sign, {}, a, "sign"); }

Matrix clip(const Matrix& a, double lo, double hi) {
    if (!(lo <= hi)) throw ShapeError("clip: lower bound exceeds upper bound");
    return unary_op(kernels::UnaryOp::clip, {.lo = lo, .hi = hi}, a, "clip");
}

Matrix add_row(const Matrix& a, const Matrix& row) {
    if (row.rows() != 1 || row.cols() != a.cols())
        throw ShapeError("add_row: expected 1x" + std::to_string(a.cols()) + " row, got " +
                         dims(row));
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row(r);
        for (std::size_t c = 0; c < a.cols(); ++c) dst[c] += row(0, c);
    }
    out.require_finite("add_row");
    return out;
}

Matrix column_sums(const Matrix& a) {
    Matrix out(1, a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto src = a.row(r);
        for (std::size_t c = 0; c < a.cols(); ++c) out(0, c) += src[c];
    }
    out.require_finite("column_sums");
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

Matrix init_uniform(RngStream& rng, std::size_t rows, std::size_t cols, double limit) {
    if (!(limit > 0.0) || !std::isfinite(limit))
        throw NumericError("init_uniform: limit must be positive and finite");
    Matrix out(rows, cols);
    for (double& v : out.data()) v = rng.uniform(-limit, limit);
    return out;
}

} // namespace advnids
