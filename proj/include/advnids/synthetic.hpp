#pragma once

#include "advnids/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace advnids {

/// Two Gaussian classes with unit within-class variance. Class 1 is shifted
/// by `shift[i]` along feature i; raw features are then offset and scaled
/// per feature so standardisation has real work to do.
struct SyntheticConfig {
    std::size_t rows = 10000;
    std::size_t dims = 20;
    std::uint64_t seed = 42;
    double attack_fraction = 0.5;
    /// Per-feature mean shift of class 1; empty selects default_shift(dims).
    std::vector<double> shift;
    /// Probability that a cell is written as NaN/Infinity/empty in the CSV.
    double missing_rate = 0.0;
};

/// 2.4·0.8^i: a few strongly informative features and a tail of weakly
/// informative ones. At 20 dims the class means are 4σ apart (Mahalanobis),
/// so the Bayes accuracy is Φ(2) ≈ 0.977.
std::vector<double> default_shift(std::size_t dims);

struct SyntheticFlows {
    std::vector<std::string> feature_names;
    Matrix features;
    std::vector<int> labels;
};

SyntheticFlows generate_gaussian_flows(const SyntheticConfig& config);

/// CICDDoS-style CSV: identifier columns, the features, then " Label" with
/// BENIGN / DDoS values. Missing cells are injected per `missing_rate`.
void write_flow_csv(const std::string& path, const SyntheticFlows& flows,
                    const SyntheticConfig& config);

} // namespace advnids
