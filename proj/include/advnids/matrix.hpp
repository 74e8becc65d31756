#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace advnids {

class RngStream;

/// Dense row-major matrix of doubles. Values are finite at every operation
/// boundary; operations that would produce NaN/Inf throw NumericError.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Takes ownership of `data`; throws ShapeError on a length mismatch and
    /// NumericError on non-finite values.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }
    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

    /// Rows selected by index, in the given order.
    Matrix select_rows(std::span<const std::size_t> indices) const;
    Matrix slice_rows(std::size_t begin, std::size_t end) const;

    /// Throws NumericError naming `context` if any element is NaN/Inf.
    void require_finite(std::string_view context) const;
    bool all_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
/// aᵀ·b without materialising the transpose.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
/// a·bᵀ without materialising the transpose.
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix mul(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double factor);
/// -1, 0 or +1 per element; sign(0) = 0.
Matrix sign(const Matrix& a);
Matrix clip(const Matrix& a, double lo, double hi);

/// Adds the 1×cols row vector to every row.
Matrix add_row(const Matrix& a, const Matrix& row);
/// 1×cols vector of column sums, rows accumulated in ascending order.
Matrix column_sums(const Matrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);

/// Entries i.i.d. uniform in [-limit, +limit], drawn row-major from rng.
Matrix init_uniform(RngStream& rng, std::size_t rows, std::size_t cols, double limit);

} // namespace advnids
