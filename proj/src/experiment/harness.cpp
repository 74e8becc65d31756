#include "advnids/experiment.hpp"

#include <algorithm>
#include <utility>

namespace advnids {

namespace {

Prediction predict_with(const MlpModel& model, const Matrix& x) {
    const Matrix probs = forward(model, x);
    return {predict_labels(probs), positive_scores(probs)};
}

// Runs `fn`, rethrowing library errors tagged with the stage name.
template <class Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(e.kind(), stage, e.what());
    } catch (const std::exception& e) {
        throw StageError(ErrorKind::io, stage, e.what());
    }
}

} // namespace

Prediction WhiteBoxModel::predict(const Matrix& x) const { return predict_with(model_, x); }
Prediction BlackBoxTarget::predict(const Matrix& x) const { return predict_with(model_, x); }

void require_trained(const TrainResult& model, const std::string& role) {
    if (model.history.empty()) throw SpecError(role + " model has not been trained");
}

ClassificationReport evaluate(const Predictor& model, const Matrix& x, std::span<const int> labels) {
    const Prediction p = model.predict(x);
    return classification_report(labels, p.labels, p.scores);
}

BaselineReports run_baseline(const TrainResult& surrogate, const TrainResult& target,
                             const Matrix& test_x, std::span<const int> test_y) {
    require_trained(surrogate, "surrogate");
    require_trained(target, "target");
    if (test_x.rows() == 0) throw DataError("baseline: empty test set");
    return {evaluate(WhiteBoxModel(surrogate.model), test_x, test_y),
            evaluate(BlackBoxTarget(target.model), test_x, test_y)};
}

DegradationTable evaluate_batches(const Predictor& model, const std::vector<AdversarialBatch>& batches,
                                  std::span<const int> labels) {
    std::vector<std::pair<double, ClassificationReport>> reports;
    reports.reserve(batches.size());
    for (const auto& b : batches) reports.emplace_back(b.epsilon, evaluate(model, b.features, labels));
    return degradation_table(std::move(reports));
}

DegradationTable run_whitebox(const TrainResult& surrogate, const Matrix& test_x,
                              std::span<const int> test_y, const AttackConfig& config) {
    require_trained(surrogate, "surrogate");
    const auto batches = sweep(surrogate.model, test_x, test_y, config);
    return evaluate_batches(WhiteBoxModel(surrogate.model), batches, test_y);
}

DegradationTable run_blackbox(const TrainResult& surrogate, const BlackBoxTarget& target,
                              const Matrix& test_x, std::span<const int> test_y,
                              const AttackConfig& config) {
    require_trained(surrogate, "surrogate");
    const auto batches = sweep(surrogate.model, test_x, test_y, config);
    return evaluate_batches(target, batches, test_y);
}

SweepChecks check_sweeps(const DegradationTable& whitebox, const DegradationTable& blackbox,
                         double monotone_tolerance) {
    SweepChecks checks;
    checks.monotone_tolerance = monotone_tolerance;
    for (const auto& w : whitebox) {
        auto it = std::find_if(blackbox.begin(), blackbox.end(),
                               [&](const DegradationRow& b) { return b.epsilon == w.epsilon; });
        if (it == blackbox.end() || it->accuracy < w.accuracy) {
            checks.blackbox_dominance = false;
            checks.dominance_violations.push_back(w.epsilon);
        }
    }
    for (std::size_t i = 1; i < whitebox.size(); ++i)
        if (whitebox[i].accuracy > whitebox[i - 1].accuracy + monotone_tolerance)
            checks.whitebox_monotone = false;
    return checks;
}

FlowDataset prepare_from_spec(const ExperimentSpec& spec) {
    const RawFlowTable raw = load_csv(spec.data_path, spec.clean);
    return prepare(raw, spec.prepare_config());
}

ModelSummary summarize(const TrainResult& result) {
    ModelSummary s;
    s.layers = result.model.specs();
    s.parameter_count = result.model.parameter_count();
    s.digest = model_digest(result.model);
    s.best_epoch = result.checkpoint.best_epoch;
    s.best_loss = result.history.empty() ? 0.0 : result.checkpoint.best_loss;
    s.monitor = result.checkpoint.monitor;
    s.history = result.history;
    return s;
}

TrainResult train_model(const ModelSpec& spec, const FlowDataset& dataset) {
    RngStream init_rng(spec.train.seed);
    const MlpModel initial = MlpModel::initialize(spec.layers(dataset.dims()), init_rng);
    const Matrix x = dataset.train_features();
    const auto y = dataset.train_labels();
    return train(initial, x, y, spec.train);
}

RunArtifacts execute(const ExperimentSpec& spec) {
    staged("spec", [&] { spec.validate(); });
    const FlowDataset data = staged("data", [&] { return prepare_from_spec(spec); });
    const Matrix test_x = data.test_features();
    const std::vector<int> test_y = data.test_labels();

    TrainResult surrogate = staged("train-surrogate", [&] { return train_model(spec.surrogate, data); });
    TrainResult target = staged("train-target", [&] { return train_model(spec.target, data); });

    RunReport report;
    report.baseline = staged("baseline", [&] { return run_baseline(surrogate, target, test_x, test_y); });

    AttackConfig attack;
    attack.epsilons = spec.epsilons;
    attack.clip = spec.clip.from_test ? staged("attack", [&] { return clip_bounds_from(test_x); })
                                      : spec.clip.fixed;
    auto batches = staged("attack", [&] { return sweep(surrogate.model, test_x, test_y, attack); });

    report.whitebox = staged("whitebox", [&] {
        return evaluate_batches(WhiteBoxModel(surrogate.model), batches, test_y);
    });
    // From here on the target is reachable only through predictions.
    const BlackBoxTarget opaque_target(target.model);
    report.blackbox = staged("blackbox", [&] { return evaluate_batches(opaque_target, batches, test_y); });
    report.checks = check_sweeps(report.whitebox, report.blackbox);

    report.dataset.rows = data.rows();
    report.dataset.features = data.dims();
    report.dataset.train_rows = data.split.train.size();
    report.dataset.test_rows = data.split.test.size();
    report.dataset.attack_rows =
        static_cast<std::size_t>(std::count(data.labels.begin(), data.labels.end(), 1));
    report.dataset.flagged_features = static_cast<std::size_t>(
        std::count(data.scaler.flagged.begin(), data.scaler.flagged.end(), true));
    report.dataset.scaler_fit = std::string(to_string(spec.scaler_fit));
    report.dataset.test_digest = matrix_digest(test_x);
    report.surrogate = summarize(surrogate);
    report.target = summarize(target);
    report.clip = attack.clip;
    report.spec_digest = spec.digest();
    report.data_seed = spec.data_seed;
    report.surrogate_seed = spec.surrogate.train.seed;
    report.target_seed = spec.target.train.seed;

    return {std::move(report), std::move(surrogate.model), std::move(target.model),
            std::move(batches),  data.feature_names,        data.scaler,
            test_y};
}

} // namespace advnids
