#pragma once

#include "advnids/evaluation.hpp"
#include "advnids/mlp.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace advnids {

using json = nlohmann::ordered_json;

void to_json(json& j, const ConfusionMatrix& cm);
void from_json(const json& j, ConfusionMatrix& cm);
void to_json(json& j, const ClassMetrics& m);
void from_json(const json& j, ClassMetrics& m);
void to_json(json& j, const AveragedMetrics& m);
void from_json(const json& j, AveragedMetrics& m);
void to_json(json& j, const ClassificationReport& r);
void from_json(const json& j, ClassificationReport& r);
void to_json(json& j, const DegradationRow& row);
void from_json(const json& j, DegradationRow& row);
void to_json(json& j, const EpochRecord& rec);
void from_json(const json& j, EpochRecord& rec);
void to_json(json& j, const LayerSpec& spec);
void from_json(const json& j, LayerSpec& spec);

/// epoch,train_loss,val_loss,train_accuracy,val_accuracy
std::string history_csv(const std::vector<EpochRecord>& history);
/// Percentages to two decimals in the column order
/// epsilon,accuracy,precision,recall,f1 (weighted metrics).
std::string degradation_csv(const DegradationTable& table);
/// epsilon,accuracy,f1 as fractions at full precision.
std::string degradation_curve_csv(const DegradationTable& table);
/// model,accuracy,precision,recall,f1 percentages (weighted metrics).
std::string baseline_csv(const std::vector<std::pair<std::string, ClassificationReport>>& rows);

/// Shortest %g-style representation that round-trips.
std::string format_number(double v);

} // namespace advnids
