#include "advnids/data_pipeline.hpp"
#include "advnids/digest.hpp"
#include "advnids/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace advnids {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

std::vector<int> pick(const std::vector<int>& labels, const std::vector<std::size_t>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(labels.at(i));
    return out;
}

} // namespace

std::optional<double> parse_cell(std::string_view cell) {
    auto s = trim(cell);
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    for (std::string_view missing : {"nan", "null", "na", "n/a", "none"})
        if (iequals(s, missing)) return std::numeric_limits<double>::quiet_NaN();
    bool negative = false;
    std::string_view body = s;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (iequals(body, "inf") || iequals(body, "infinity"))
        return negative ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
    double value = 0.0;
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (end != body.data() + body.size()) return std::nullopt;
    if (ec == std::errc::result_out_of_range) {
        // Overflow saturates to ±Inf and is imputed like any other infinity.
        value = std::numeric_limits<double>::infinity();
    } else if (ec != std::errc()) {
        return std::nullopt;
    }
    return negative ? -value : value;
}

Matrix impute_column_means(std::vector<double> values, std::size_t rows, std::size_t cols,
                           std::vector<std::size_t>* imputed,
                           const std::vector<std::string>* names) {
    if (values.size() != rows * cols) throw ShapeError("impute_column_means: length mismatch");
    if (imputed) imputed->assign(cols, 0);
    for (std::size_t c = 0; c < cols; ++c) {
        double sum = 0.0;
        std::size_t finite = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            const double v = values[r * cols + c];
            if (std::isfinite(v)) {
                sum += v;
                ++finite;
            }
        }
        if (finite == 0) {
            const std::string name =
                names && c < names->size() ? (*names)[c] : "#" + std::to_string(c);
            throw DataError("unimputable column '" + name + "': no finite values");
        }
        const double mean = sum / static_cast<double>(finite);
        if (!std::isfinite(mean))
            throw NumericError("column mean overflowed while imputing column " + std::to_string(c));
        for (std::size_t r = 0; r < rows; ++r) {
            double& v = values[r * cols + c];
            if (!std::isfinite(v)) {
                v = mean;
                if (imputed) ++(*imputed)[c];
            }
        }
    }
    return Matrix(rows, cols, std::move(values));
}

CleanedTable clean(const RawFlowTable& table) {
    const std::size_t rows = table.rows();
    const std::size_t cols = table.columns.size();
    if (table.labels.size() != rows) throw DataError("clean: label count differs from row count");
    if (rows == 0) throw DataError("clean: table has no rows");
    std::vector<double> values(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (table.cells[r].size() != cols) throw DataError("clean: ragged row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c) {
            auto v = parse_cell(table.cells[r][c]);
            if (!v)
                throw DataError("clean: non-numeric value '" + table.cells[r][c] + "' in column '" +
                                table.columns[c] + "' (row " + std::to_string(r) + ")");
            values[r * cols + c] = *v;
        }
    }
    CleanedTable out;
    out.feature_names = table.columns;
    out.labels = table.labels;
    out.features = impute_column_means(std::move(values), rows, cols, &out.imputed, &table.columns);
    return out;
}

ScalerParams fit_scaler(const Matrix& features) {
    if (features.empty()) throw DataError("fit_scaler: empty feature matrix");
    features.require_finite("fit_scaler");
    const std::size_t rows = features.rows(), cols = features.cols();
    const auto n = static_cast<double>(rows);
    ScalerParams p;
    p.mean.assign(cols, 0.0);
    p.stddev.assign(cols, 0.0);
    p.flagged.assign(cols, false);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) p.mean[c] += features(r, c);
    for (auto& m : p.mean) m /= n;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double d = features(r, c) - p.mean[c];
            p.stddev[c] += d * d;
        }
    for (std::size_t c = 0; c < cols; ++c) {
        p.stddev[c] = std::sqrt(p.stddev[c] / n);
        if (!std::isfinite(p.mean[c]) || !std::isfinite(p.stddev[c]))
            throw NumericError("fit_scaler: overflow in column " + std::to_string(c));
        if (p.stddev[c] < ScalerParams::kMinStd) {
            p.stddev[c] = 1.0;
            p.flagged[c] = true;
        }
    }
    return p;
}

Matrix transform(const Matrix& features, const ScalerParams& scaler) {
    if (features.cols() != scaler.features())
        throw ShapeError("transform: matrix has " + std::to_string(features.cols()) +
                         " features, scaler has " + std::to_string(scaler.features()));
    Matrix out = features;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        auto row = out.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            row[c] = (row[c] - scaler.mean[c]) / scaler.stddev[c];
    }
    out.require_finite("transform");
    return out;
}

Matrix inverse_transform(const Matrix& scaled, const ScalerParams& scaler) {
    if (scaled.cols() != scaler.features())
        throw ShapeError("inverse_transform: feature count mismatch");
    Matrix out = scaled;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        auto row = out.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            row[c] = row[c] * scaler.stddev[c] + scaler.mean[c];
    }
    out.require_finite("inverse_transform");
    return out;
}

std::size_t test_count(std::size_t n, double test_fraction) {
    if (n < 2) throw DataError("split: need at least 2 rows, got " + std::to_string(n));
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw SpecError("split: test fraction must lie in (0, 1)");
    const double exact = static_cast<double>(n) * test_fraction;
    const double nearest = std::round(exact);
    // Snap products like 10 * 0.4 = 4.000000000000001 before taking the ceiling.
    const double count = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)
                             ? nearest
                             : std::ceil(exact);
    return std::clamp<std::size_t>(static_cast<std::size_t>(count), 1, n - 1);
}

Split split(std::size_t n, double test_fraction, RngStream& rng) {
    const std::size_t n_test = test_count(n, test_fraction);
    const auto perm = shuffle_indices(rng, n);
    Split s;
    s.test.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    return s;
}

std::string_view to_string(ScalerFit fit) noexcept {
    return fit == ScalerFit::full ? "full" : "train-only";
}

ScalerFit scaler_fit_from_string(std::string_view text) {
    if (text == "full") return ScalerFit::full;
    if (text == "train-only") return ScalerFit::train_only;
    throw SpecError("scaler fit must be 'full' or 'train-only', got '" + std::string(text) + "'");
}

std::vector<int> FlowDataset::train_labels() const { return pick(labels, split.train); }
std::vector<int> FlowDataset::test_labels() const { return pick(labels, split.test); }

FlowDataset prepare(const RawFlowTable& table, const PrepareConfig& config) {
    CleanedTable cleaned = clean(table);
    RngStream rng(config.seed);
    FlowDataset ds;
    ds.split = split(cleaned.features.rows(), config.test_fraction, rng);
    ds.scaler = config.scaler_fit == ScalerFit::full
                    ? fit_scaler(cleaned.features)
                    : fit_scaler(cleaned.features.select_rows(ds.split.train));
    ds.features = transform(cleaned.features, ds.scaler);
    ds.feature_names = std::move(cleaned.feature_names);
    ds.labels = std::move(cleaned.labels);
    return ds;
}

std::string matrix_digest(const Matrix& m) {
    Digest d;
    d.u64(m.rows()).u64(m.cols()).f64s(m.data());
    return d.hex();
}

} // namespace advnids
