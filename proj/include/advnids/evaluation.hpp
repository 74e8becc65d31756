#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace advnids {

/// Class 1 (attack) is the positive class.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predicted);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t support = 0;
    // Set when the metric's denominator was zero and 0 was substituted.
    bool precision_undefined = false;
    bool recall_undefined = false;
    bool f1_undefined = false;

    friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

struct AveragedMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    friend bool operator==(const AveragedMetrics&, const AveragedMetrics&) = default;
};

struct ClassificationReport {
    ConfusionMatrix counts;
    std::array<ClassMetrics, 2> classes; // [0] benign, [1] attack
    double accuracy = 0.0;
    AveragedMetrics macro;
    AveragedMetrics weighted; // support-weighted; the headline figures
    std::optional<double> roc_auc;
    bool degenerate = false;  // any metric hit a zero denominator

    friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Accuracy, per-class precision/recall/F1 and their macro and
/// support-weighted means. Zero denominators yield 0 and set `degenerate`.
ClassificationReport report(const ConfusionMatrix& counts);

/// As above, plus ROC-AUC from per-sample attack scores. AUC is left empty
/// (and the report flagged) when only one class is present.
ClassificationReport report(const ConfusionMatrix& counts, std::span<const int> labels,
                            std::span<const double> scores);

/// Convenience: confusion + report (+ AUC when scores are given).
ClassificationReport classification_report(std::span<const int> labels,
                                           std::span<const int> predicted,
                                           std::span<const double> scores = {});

/// Mann-Whitney statistic: P(score of a random positive > score of a random
/// negative), ties counted ½. Throws DataError unless both classes occur.
double roc_auc(std::span<const int> labels, std::span<const double> scores);

struct DegradationRow {
    double epsilon = 0.0;
    double accuracy = 0.0;
    double precision = 0.0; // weighted
    double recall = 0.0;    // weighted
    double f1 = 0.0;        // weighted
    ClassificationReport report;

    friend bool operator==(const DegradationRow&, const DegradationRow&) = default;
};

using DegradationTable = std::vector<DegradationRow>;

/// Rows sorted by ascending epsilon; throws DataError on duplicate epsilons.
DegradationTable degradation_table(std::vector<std::pair<double, ClassificationReport>> reports);

} // namespace advnids
