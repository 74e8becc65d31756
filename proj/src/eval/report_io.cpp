#include "advnids/report_io.hpp"

#include "advnids/error.hpp"

#include <charconv>
#include <cstdio>

namespace advnids {

void to_json(json& j, const ConfusionMatrix& cm) {
    j = json{{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
}

void from_json(const json& j, ConfusionMatrix& cm) {
    j.at("tp").get_to(cm.tp);
    j.at("fp").get_to(cm.fp);
    j.at("tn").get_to(cm.tn);
    j.at("fn").get_to(cm.fn);
}

void to_json(json& j, const ClassMetrics& m) {
    j = json{{"precision", m.precision},
             {"recall", m.recall},
             {"f1", m.f1},
             {"support", m.support},
             {"precision_undefined", m.precision_undefined},
             {"recall_undefined", m.recall_undefined},
             {"f1_undefined", m.f1_undefined}};
}

void from_json(const json& j, ClassMetrics& m) {
    j.at("precision").get_to(m.precision);
    j.at("recall").get_to(m.recall);
    j.at("f1").get_to(m.f1);
    j.at("support").get_to(m.support);
    j.at("precision_undefined").get_to(m.precision_undefined);
    j.at("recall_undefined").get_to(m.recall_undefined);
    j.at("f1_undefined").get_to(m.f1_undefined);
}

void to_json(json& j, const AveragedMetrics& m) {
    j = json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

void from_json(const json& j, AveragedMetrics& m) {
    j.at("precision").get_to(m.precision);
    j.at("recall").get_to(m.recall);
    j.at("f1").get_to(m.f1);
}

void to_json(json& j, const ClassificationReport& r) {
    j = json{{"confusion", r.counts},
             {"accuracy", r.accuracy},
             {"benign", r.classes[0]},
             {"attack", r.classes[1]},
             {"macro_avg", r.macro},
             {"weighted_avg", r.weighted},
             {"roc_auc", r.roc_auc ? json(*r.roc_auc) : json(nullptr)},
             {"degenerate", r.degenerate}};
}

void from_json(const json& j, ClassificationReport& r) {
    j.at("confusion").get_to(r.counts);
    j.at("accuracy").get_to(r.accuracy);
    j.at("benign").get_to(r.classes[0]);
    j.at("attack").get_to(r.classes[1]);
    j.at("macro_avg").get_to(r.macro);
    j.at("weighted_avg").get_to(r.weighted);
    const auto& auc = j.at("roc_auc");
    r.roc_auc = auc.is_null() ? std::nullopt : std::optional<double>(auc.get<double>());
    j.at("degenerate").get_to(r.degenerate);
}

void to_json(json& j, const DegradationRow& row) {
    j = json{{"epsilon", row.epsilon}, {"report", row.report}};
}

void from_json(const json& j, DegradationRow& row) {
    j.at("epsilon").get_to(row.epsilon);
    j.at("report").get_to(row.report);
    row.accuracy = row.report.accuracy;
    row.precision = row.report.weighted.precision;
    row.recall = row.report.weighted.recall;
    row.f1 = row.report.weighted.f1;
}

void to_json(json& j, const EpochRecord& rec) {
    j = json{{"epoch", rec.epoch},
             {"loss", rec.train_loss},
             {"accuracy", rec.train_accuracy},
             {"val_loss", rec.val_loss},
             {"val_accuracy", rec.val_accuracy},
             {"best_loss", rec.best_loss}};
}

void from_json(const json& j, EpochRecord& rec) {
    j.at("epoch").get_to(rec.epoch);
    j.at("loss").get_to(rec.train_loss);
    j.at("accuracy").get_to(rec.train_accuracy);
    j.at("val_loss").get_to(rec.val_loss);
    j.at("val_accuracy").get_to(rec.val_accuracy);
    j.at("best_loss").get_to(rec.best_loss);
}

void to_json(json& j, const LayerSpec& spec) {
    j = json{{"inputs", spec.inputs},
             {"outputs", spec.outputs},
             {"activation", std::string(to_string(spec.activation))}};
}

void from_json(const json& j, LayerSpec& spec) {
    j.at("inputs").get_to(spec.inputs);
    j.at("outputs").get_to(spec.outputs);
    spec.activation = activation_from_string(j.at("activation").get<std::string>());
}

std::string format_number(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general);
    if (ec != std::errc()) throw NumericError("format_number: conversion failed");
    return std::string(buf, end);
}

namespace {
std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * fraction);
    return buf;
}
} // namespace

std::string history_csv(const std::vector<EpochRecord>& history) {
    std::string out = "epoch,train_loss,val_loss,train_accuracy,val_accuracy\n";
    for (const auto& r : history) {
        out += std::to_string(r.epoch) + ',' + format_number(r.train_loss) + ',' +
               format_number(r.val_loss) + ',' + format_number(r.train_accuracy) + ',' +
               format_number(r.val_accuracy) + '\n';
    }
    return out;
}

std::string degradation_csv(const DegradationTable& table) {
    std::string out = "epsilon,accuracy_pct,precision_pct,recall_pct,f1_pct\n";
    for (const auto& r : table)
        out += format_number(r.epsilon) + ',' + pct(r.accuracy) + ',' + pct(r.precision) + ',' +
               pct(r.recall) + ',' + pct(r.f1) + '\n';
    return out;
}

std::string degradation_curve_csv(const DegradationTable& table) {
    std::string out = "epsilon,accuracy,f1\n";
    for (const auto& r : table)
        out += format_number(r.epsilon) + ',' + format_number(r.accuracy) + ',' +
               format_number(r.f1) + '\n';
    return out;
}

std::string baseline_csv(const std::vector<std::pair<std::string, ClassificationReport>>& rows) {
    std::string out = "model,accuracy_pct,precision_pct,recall_pct,f1_pct\n";
    for (const auto& [name, r] : rows)
        out += name + ',' + pct(r.accuracy) + ',' + pct(r.weighted.precision) + ',' +
               pct(r.weighted.recall) + ',' + pct(r.weighted.f1) + '\n';
    return out;
}

} // namespace advnids
