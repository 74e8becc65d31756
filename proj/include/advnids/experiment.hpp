#pragma once

#include "advnids/data_pipeline.hpp"
#include "advnids/error.hpp"
#include "advnids/evaluation.hpp"
#include "advnids/fgsm.hpp"
#include "advnids/mlp.hpp"
#include "advnids/report_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace advnids {

inline constexpr const char* kVersion = "advnids 1.0.0";

struct ModelSpec {
    std::vector<std::size_t> hidden;
    Activation hidden_activation = Activation::relu;
    Activation head = Activation::softmax;
    TrainConfig train;

    /// 60-50-30 ReLU, sigmoid head, lr 1e-4, batch 1024, 50 epochs, 30% validation.
    static ModelSpec reference_surrogate();
    /// 50-25 ReLU, softmax head, lr 1e-3, batch 4048, 60 epochs, 20% validation.
    static ModelSpec reference_target();

    std::vector<LayerSpec> layers(std::size_t inputs) const;
};

struct ClipSpec {
    /// Use the global min/max of the scaled test features.
    bool from_test = true;
    ClipBounds fixed;
};

/// Declarative description of one surrogate/target/attack run. Stored as
/// JSON (schema_version 1); unknown keys are rejected.
struct ExperimentSpec {
    static constexpr int kSchemaVersion = 1;

    std::string data_path;
    CleanConfig clean;
    double test_fraction = 0.4;
    std::uint64_t data_seed = 42;
    ScalerFit scaler_fit = ScalerFit::full;
    ModelSpec surrogate = ModelSpec::reference_surrogate();
    ModelSpec target = ModelSpec::reference_target();
    std::vector<double> epsilons = AttackConfig::default_epsilons();
    ClipSpec clip;
    bool export_batches = false;
    std::string output_dir;

    /// Throws SpecError naming the offending field.
    void validate() const;
    PrepareConfig prepare_config() const;
    /// Digest of the canonical JSON form.
    std::string digest() const;
};

json to_json(const ExperimentSpec& spec);
/// Relative data and output paths are resolved against `base_dir` when given.
ExperimentSpec spec_from_json(const json& j, const std::string& base_dir = {});
ExperimentSpec load_spec(const std::string& path);

/// Error raised by run_experiment; keeps the kind of the underlying failure.
class StageError : public Error {
public:
    StageError(ErrorKind kind, std::string stage, const std::string& what)
        : Error(kind, "[" + stage + "] " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct Prediction {
    std::vector<int> labels;
    std::vector<double> scores; // attack-class score per row
};

/// Query-only view of a classifier.
class Predictor {
public:
    virtual ~Predictor() = default;
    virtual Prediction predict(const Matrix& x) const = 0;
};

/// Full-access model, used for the surrogate.
class WhiteBoxModel final : public Predictor {
public:
    explicit WhiteBoxModel(const MlpModel& model) : model_(model) {}
    Prediction predict(const Matrix& x) const override;
    const MlpModel& model() const noexcept { return model_; }

private:
    const MlpModel& model_;
};

/// The target as the attacker sees it: predictions only. It owns its
/// parameters and offers no way to reach them, so no gradient can be taken.
class BlackBoxTarget final : public Predictor {
public:
    explicit BlackBoxTarget(MlpModel model) : model_(std::move(model)) {}
    Prediction predict(const Matrix& x) const override;

private:
    MlpModel model_;
};

/// Throws SpecError if the result carries no training epochs.
void require_trained(const TrainResult& model, const std::string& role);

ClassificationReport evaluate(const Predictor& model, const Matrix& x, std::span<const int> labels);

struct BaselineReports {
    ClassificationReport surrogate;
    ClassificationReport target;
};

BaselineReports run_baseline(const TrainResult& surrogate, const TrainResult& target,
                             const Matrix& test_x, std::span<const int> test_y);

/// One report per batch, in ascending epsilon.
DegradationTable evaluate_batches(const Predictor& model, const std::vector<AdversarialBatch>& batches,
                                  std::span<const int> labels);

/// Surrogate attacked with its own FGSM batches.
DegradationTable run_whitebox(const TrainResult& surrogate, const Matrix& test_x,
                              std::span<const int> test_y, const AttackConfig& config);

/// Target evaluated on batches crafted from the surrogate's gradients.
DegradationTable run_blackbox(const TrainResult& surrogate, const BlackBoxTarget& target,
                              const Matrix& test_x, std::span<const int> test_y,
                              const AttackConfig& config);

struct ModelSummary {
    std::vector<LayerSpec> layers;
    std::size_t parameter_count = 0;
    std::string digest;
    std::size_t best_epoch = 0;
    double best_loss = 0.0;
    std::string monitor;
    std::vector<EpochRecord> history;
};

struct DatasetSummary {
    std::size_t rows = 0;
    std::size_t features = 0;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    std::size_t attack_rows = 0;
    std::size_t flagged_features = 0;
    std::string scaler_fit;
    std::string test_digest;
};

struct SweepChecks {
    /// Target accuracy ≥ surrogate accuracy at every epsilon.
    bool blackbox_dominance = true;
    std::vector<double> dominance_violations;
    /// White-box accuracy never rises by more than `tolerance` between steps.
    bool whitebox_monotone = true;
    double monotone_tolerance = 0.01;
};

SweepChecks check_sweeps(const DegradationTable& whitebox, const DegradationTable& blackbox,
                         double monotone_tolerance = 0.01);

struct RunReport {
    DatasetSummary dataset;
    ModelSummary surrogate;
    ModelSummary target;
    BaselineReports baseline;
    ClipBounds clip;
    DegradationTable whitebox;
    DegradationTable blackbox;
    SweepChecks checks;
    std::string spec_digest;
    std::uint64_t data_seed = 0;
    std::uint64_t surrogate_seed = 0;
    std::uint64_t target_seed = 0;
    std::string version = kVersion;
};

json to_json(const RunReport& report);
RunReport run_report_from_json(const json& j);
RunReport load_run_report(const std::string& path);

/// Loads and prepares the data named by the spec.
FlowDataset prepare_from_spec(const ExperimentSpec& spec);

ModelSummary summarize(const TrainResult& result);

/// Trains one model from its spec section on the dataset's training rows.
TrainResult train_model(const ModelSpec& spec, const FlowDataset& dataset);

struct RunArtifacts {
    RunReport report;
    MlpModel surrogate;
    MlpModel target;
    std::vector<AdversarialBatch> batches;
    std::vector<std::string> feature_names;
    ScalerParams scaler;
    std::vector<int> test_labels;
};

/// The whole pipeline in memory: data → train both → baseline → white-box →
/// black-box. Errors are rethrown as StageError.
RunArtifacts execute(const ExperimentSpec& spec);

/// execute() and persist everything to spec.output_dir. Output is staged in
/// a sibling directory and renamed into place only on success.
RunReport run_experiment(const ExperimentSpec& spec);

/// History CSVs per model and accuracy/F1 curves per phase under `dir`.
void emit_curves(const RunReport& report, const std::string& dir);
/// Table-style CSVs (baseline, white-box, black-box) under `dir`.
void emit_tables(const RunReport& report, const std::string& dir);

} // namespace advnids
