#pragma once

#include "advnids/matrix.hpp"
#include "advnids/rng.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advnids {

enum class Activation { relu, sigmoid, softmax, linear };

std::string_view to_string(Activation a) noexcept;
Activation activation_from_string(std::string_view text);

struct LayerSpec {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    Activation activation = Activation::relu;

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct Layer {
    LayerSpec spec;
    Matrix weights; // inputs × outputs
    Matrix bias;    // 1 × outputs
};

/// Feed-forward binary classifier: dense layers, two output units.
class MlpModel {
public:
    static constexpr std::size_t kOutputs = 2;

    /// Validates the width chain, the output width, softmax placement and
    /// parameter finiteness; throws ShapeError / NumericError.
    explicit MlpModel(std::vector<Layer> layers);

    /// Glorot-uniform weights (limit √(6/(fan_in+fan_out))), zero biases.
    static MlpModel initialize(const std::vector<LayerSpec>& specs, RngStream& rng);

    /// input → hidden widths (hidden activation) → 2 units (head activation).
    static std::vector<LayerSpec> architecture(std::size_t inputs,
                                               std::span<const std::size_t> hidden,
                                               Activation hidden_activation, Activation head);

    const std::vector<Layer>& layers() const noexcept { return layers_; }
    std::vector<LayerSpec> specs() const;
    std::size_t input_width() const noexcept { return layers_.front().spec.inputs; }
    Activation head() const noexcept { return layers_.back().spec.activation; }
    std::size_t parameter_count() const noexcept;

    /// Parameter tensors in order W0, b0, W1, b1, ...
    std::vector<std::span<double>> parameters();
    std::vector<std::span<const double>> parameters() const;

    /// Throws NumericError if any parameter went non-finite.
    void require_finite() const;

    friend bool operator==(const MlpModel& a, const MlpModel& b);

private:
    std::vector<Layer> layers_;
};

/// Gradient tensors shaped like MlpModel::parameters().
struct Gradients {
    std::vector<Matrix> tensors;

    double norm() const;
};

/// Probabilities n×2 (softmax rows sum to 1; sigmoid units each in (0,1)).
Matrix forward(const MlpModel& model, const Matrix& x);

/// One-hot n×2 targets from {0,1} labels.
Matrix one_hot(std::span<const int> labels);

inline constexpr double kProbClamp = 1e-12;

/// Mean over samples and both output units of the binary cross-entropy,
/// probabilities clamped to [1e-12, 1-1e-12].
double bce_loss(const Matrix& probs, const Matrix& targets);

struct Backprop {
    double loss = 0.0;
    Matrix probs;
    Gradients params; // empty unless requested
    Matrix input;     // empty unless requested
};

/// One forward/backward pass of bce_loss∘forward. Where the probability
/// clamp is active the loss is flat, so those units contribute no gradient.
Backprop backprop(const MlpModel& model, const Matrix& x, const Matrix& targets,
                  bool want_params, bool want_input);

Gradients grad_params(const MlpModel& model, const Matrix& x, const Matrix& targets);
Matrix grad_input(const MlpModel& model, const Matrix& x, const Matrix& targets);

/// Argmax over the two units; ties go to class 0.
std::vector<int> predict_labels(const Matrix& probs);
std::vector<int> predict_labels(const MlpModel& model, const Matrix& x);
/// Column 1 of the probabilities, used as the attack-class score.
std::vector<double> positive_scores(const Matrix& probs);

double accuracy(std::span<const int> labels, std::span<const int> predicted);

struct AdamConstants {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-7;
};

struct AdamState {
    AdamConstants constants;
    std::vector<std::vector<double>> m;
    std::vector<std::vector<double>> v;
    std::uint64_t t = 0;

    static AdamState for_model(const MlpModel& model, AdamConstants constants = {});
};

/// Bias-corrected Adam update applied in place; increments state.t.
void adam_step(MlpModel& model, const Gradients& grads, AdamState& state, double learning_rate);

struct TrainConfig {
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;
    std::size_t epochs = 1;
    double validation_fraction = 0.0;
    std::uint64_t seed = 0;
    AdamConstants adam;

    /// Throws SpecError on an invalid configuration.
    void validate() const;
};

struct EpochRecord {
    std::size_t epoch = 0; // 1-based
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_loss = 0.0;
    double val_accuracy = 0.0;
    double best_loss = 0.0; // monitored loss of the checkpoint after this epoch
};

struct Checkpoint {
    std::vector<Layer> best_layers;
    double best_loss = std::numeric_limits<double>::infinity();
    std::size_t best_epoch = 0; // 0 when no epoch ran
    /// "val_loss", or "loss" when no validation rows are held out.
    std::string monitor = "val_loss";
};

struct TrainResult {
    MlpModel model;
    Checkpoint checkpoint;
    std::vector<EpochRecord> history;
};

/// Rows of x held out for validation: the last ones, Keras-style.
std::size_t validation_rows(std::size_t n, double validation_fraction);

/// Mini-batch Adam on the first rows of (x, labels) with the tail held out
/// for validation. Training rows are reshuffled each epoch from
/// config.seed. Returns the parameters with the lowest monitored loss.
TrainResult train(const MlpModel& initial, const Matrix& x, std::span<const int> labels,
                  const TrainConfig& config);

std::string encode_model(const MlpModel& model);
MlpModel decode_model(std::string_view bytes);
void save_model(const std::string& path, const MlpModel& model);
MlpModel load_model(const std::string& path);
std::string model_digest(const MlpModel& model);

} // namespace advnids
