#include "advnids/evaluation.hpp"

#include "advnids/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace advnids {

namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool& undefined) {
    if (den == 0) {
        undefined = true;
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics class_metrics(std::uint64_t hit, std::uint64_t predicted, std::uint64_t actual) {
    ClassMetrics m;
    m.support = actual;
    m.precision = ratio(hit, predicted, m.precision_undefined);
    m.recall = ratio(hit, actual, m.recall_undefined);
    // 2TP / (2TP + FP + FN) has a zero denominator only when the class is
    // neither present nor predicted.
    m.f1_undefined = predicted + actual == 0;
    if (m.precision + m.recall > 0.0) m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

} // namespace

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predicted) {
    if (labels.size() != predicted.size())
        throw DataError("confusion: labels and predictions differ in length");
    if (labels.empty()) throw DataError("confusion: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i], p = predicted[i];
        if ((y != 0 && y != 1) || (p != 0 && p != 1))
            throw DataError("confusion: values must be 0 or 1");
        if (y == 1)
            (p == 1 ? cm.tp : cm.fn) += 1;
        else
            (p == 1 ? cm.fp : cm.tn) += 1;
    }
    return cm;
}

ClassificationReport report(const ConfusionMatrix& counts) {
    const std::uint64_t total = counts.total();
    if (total == 0) throw DataError("report: empty confusion matrix");
    ClassificationReport r;
    r.counts = counts;
    r.classes[0] = class_metrics(counts.tn, counts.tn + counts.fn, counts.tn + counts.fp);
    r.classes[1] = class_metrics(counts.tp, counts.tp + counts.fp, counts.tp + counts.fn);
    r.accuracy = static_cast<double>(counts.tp + counts.tn) / static_cast<double>(total);

    const double n = static_cast<double>(total);
    const double w0 = static_cast<double>(r.classes[0].support) / n;
    const double w1 = static_cast<double>(r.classes[1].support) / n;
    const auto& c0 = r.classes[0];
    const auto& c1 = r.classes[1];
    r.macro = {(c0.precision + c1.precision) / 2.0, (c0.recall + c1.recall) / 2.0,
               (c0.f1 + c1.f1) / 2.0};
    r.weighted = {w0 * c0.precision + w1 * c1.precision, w0 * c0.recall + w1 * c1.recall,
                  w0 * c0.f1 + w1 * c1.f1};
    for (const auto& c : r.classes)
        r.degenerate = r.degenerate || c.precision_undefined || c.recall_undefined || c.f1_undefined;
    return r;
}

ClassificationReport report(const ConfusionMatrix& counts, std::span<const int> labels,
                            std::span<const double> scores) {
    ClassificationReport r = report(counts);
    if (labels.size() != counts.total() || scores.size() != labels.size())
        throw DataError("report: labels/scores do not match the confusion matrix total");
    const bool both = std::find(labels.begin(), labels.end(), 0) != labels.end() &&
                      std::find(labels.begin(), labels.end(), 1) != labels.end();
    if (both)
        r.roc_auc = roc_auc(labels, scores);
    else
        r.degenerate = true;
    return r;
}

ClassificationReport classification_report(std::span<const int> labels,
                                           std::span<const int> predicted,
                                           std::span<const double> scores) {
    const auto cm = confusion(labels, predicted);
    return scores.empty() ? report(cm) : report(cm, labels, scores);
}

double roc_auc(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size()) throw DataError("roc_auc: length mismatch");
    std::uint64_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw DataError("roc_auc: labels must be 0 or 1");
        if (!std::isfinite(scores[i])) throw NumericError("roc_auc: non-finite score");
        (labels[i] == 1 ? pos : neg) += 1;
    }
    if (pos == 0 || neg == 0) throw DataError("roc_auc: undefined with a single class present");

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    // Sum of 1-based ranks of positives, ties sharing their average rank.
    // Twice the sum is an integer, so it is accumulated exactly.
    std::uint64_t twice_rank_sum = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        std::uint64_t tied_pos = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            tied_pos += labels[order[j]] == 1;
            ++j;
        }
        twice_rank_sum += tied_pos * static_cast<std::uint64_t>((i + 1) + j);
        i = j;
    }
    // Correctly ordered pairs (ties ½) doubled: 2·R₊ − n₊(n₊+1).
    const std::uint64_t twice_u = twice_rank_sum - pos * (pos + 1);
    return static_cast<double>(twice_u) / 2.0 /
           (static_cast<double>(pos) * static_cast<double>(neg));
}

DegradationTable degradation_table(std::vector<std::pair<double, ClassificationReport>> reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    DegradationTable table;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i > 0 && reports[i].first == reports[i - 1].first)
            throw DataError("degradation_table: duplicate epsilon " +
                            std::to_string(reports[i].first));
        const auto& r = reports[i].second;
        table.push_back({reports[i].first, r.accuracy, r.weighted.precision, r.weighted.recall,
                         r.weighted.f1, r});
    }
    return table;
}

} // namespace advnids
