#pragma once

#include "advnids/matrix.hpp"
#include "advnids/rng.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace advnids {

/// Maps label text to {0 = benign, 1 = attack}. Names are compared after
/// trimming surrounding whitespace.
struct LabelMapping {
    std::map<std::string, int, std::less<>> classes{{"BENIGN", 0}};
    /// Class for any value not listed in `classes`; nullopt makes such values an error.
    std::optional<int> otherwise = 1;

    int map(std::string_view text) const;
    /// Throws SpecError unless the mapping yields exactly the classes {0, 1}.
    void validate() const;
};

/// Identifier columns of CICDDoS-2019 flow CSVs.
std::vector<std::string> default_drop_columns();

struct CleanConfig {
    std::string label_column = "Label";
    std::vector<std::string> drop_columns = default_drop_columns();
    LabelMapping labels;
};

struct RawFlowTable {
    std::vector<std::string> columns; // feature columns only, drop-list removed
    std::vector<std::vector<std::string>> cells;
    std::string label_column;
    std::vector<std::string> label_text;
    std::vector<int> labels;

    std::size_t rows() const noexcept { return cells.size(); }
};

RawFlowTable load_csv(const std::string& path, const CleanConfig& config);
RawFlowTable parse_csv(std::istream& in, const CleanConfig& config);

struct CleanedTable {
    std::vector<std::string> feature_names;
    Matrix features;
    std::vector<int> labels;
    /// Cells replaced by the column mean, per feature.
    std::vector<std::size_t> imputed;
};

/// Parses every feature cell; NaN, ±Inf and empty cells become the mean of
/// the column's finite values.
CleanedTable clean(const RawFlowTable& table);

/// The imputation step on already-parsed values (row-major, may hold NaN/Inf).
Matrix impute_column_means(std::vector<double> values, std::size_t rows, std::size_t cols,
                           std::vector<std::size_t>* imputed = nullptr,
                           const std::vector<std::string>* names = nullptr);

/// Parses a numeric cell. Empty, NaN and Inf spellings yield NaN/±Inf;
/// anything else that is not a number yields nullopt.
std::optional<double> parse_cell(std::string_view cell);

struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> stddev;   // population σ; 1.0 where flagged
    std::vector<bool> flagged;    // σ fell below kMinStd

    static constexpr double kMinStd = 1e-12;
    std::size_t features() const noexcept { return mean.size(); }
};

ScalerParams fit_scaler(const Matrix& features);
Matrix transform(const Matrix& features, const ScalerParams& scaler);
Matrix inverse_transform(const Matrix& scaled, const ScalerParams& scaler);

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Shuffles 0..n-1 and takes the first ceil(n·test_fraction) indices as the
/// test set (scikit-learn semantics).
Split split(std::size_t n, double test_fraction, RngStream& rng);
std::size_t test_count(std::size_t n, double test_fraction);

enum class ScalerFit { full, train_only };

std::string_view to_string(ScalerFit fit) noexcept;
ScalerFit scaler_fit_from_string(std::string_view text);

struct PrepareConfig {
    CleanConfig clean;
    double test_fraction = 0.4;
    std::uint64_t seed = 42;
    ScalerFit scaler_fit = ScalerFit::full;
};

struct FlowDataset {
    std::vector<std::string> feature_names;
    Matrix features; // scaled
    std::vector<int> labels;
    Split split;
    ScalerParams scaler;

    std::size_t rows() const noexcept { return features.rows(); }
    std::size_t dims() const noexcept { return features.cols(); }
    Matrix train_features() const { return features.select_rows(split.train); }
    Matrix test_features() const { return features.select_rows(split.test); }
    std::vector<int> train_labels() const;
    std::vector<int> test_labels() const;
};

/// clean → split → fit scaler (full data or train rows) → transform.
FlowDataset prepare(const RawFlowTable& table, const PrepareConfig& config);

/// Versioned binary file for cleaned datasets and adversarial batches.
struct FlowCache {
    enum class Kind : std::uint32_t { dataset = 0, adversarial = 1 };

    Kind kind = Kind::dataset;
    std::vector<std::string> feature_names;
    Matrix features;
    std::vector<int> labels;
    Split split;
    ScalerParams scaler;
    double epsilon = 0.0;     // adversarial only
    std::string provenance;   // adversarial only

    static constexpr std::uint32_t kVersion = 1;
};

FlowCache to_cache(const FlowDataset& dataset);
FlowDataset from_cache(const FlowCache& cache);
std::string encode_cache(const FlowCache& cache);
FlowCache decode_cache(std::string_view bytes);
void write_cache(const std::string& path, const FlowCache& cache);
FlowCache read_cache(const std::string& path);

/// Digest of a feature matrix (shape + bit patterns).
std::string matrix_digest(const Matrix& m);

} // namespace advnids
