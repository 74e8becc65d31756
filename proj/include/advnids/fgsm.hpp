#pragma once

#include "advnids/data_pipeline.hpp"
#include "advnids/matrix.hpp"
#include "advnids/mlp.hpp"

#include <span>
#include <string>
#include <vector>

namespace advnids {

struct ClipBounds {
    double low = 0.0;
    double high = 0.0;
};

/// Global minimum and maximum over every cell.
ClipBounds clip_bounds_from(const Matrix& features);

struct AttackConfig {
    std::vector<double> epsilons = default_epsilons();
    ClipBounds clip;

    /// 0.0001, 0.0002, ..., 0.0009.
    static std::vector<double> default_epsilons();
    /// Throws SpecError unless epsilons are finite, > 0 and strictly
    /// ascending and clip.low <= clip.high.
    void validate() const;
};

struct AdversarialBatch {
    double epsilon = 0.0;
    Matrix features;
    std::string source_model; // digest of the model the gradients came from
    std::string clean_digest; // digest of the unperturbed features

    std::string provenance() const { return "model:" + source_model + ";clean:" + clean_digest; }
};

/// sign(∇ₓ J(θ, x, y)) for the model's own training loss, untargeted (y are
/// the true labels).
Matrix gradient_sign(const MlpModel& model, const Matrix& x, std::span<const int> labels);

/// x_adv = clamp(x + ε·sign(∇ₓ J), low, high), rounded so that |x_adv - x| <= ε
/// (kernels::step_coordinate). ε = 0 returns x unchanged.
AdversarialBatch fgsm(const MlpModel& model, const Matrix& x, std::span<const int> labels,
                      double epsilon, ClipBounds clip);

/// One batch per epsilon, in config order, all sharing one sign pattern.
std::vector<AdversarialBatch> sweep(const MlpModel& model, const Matrix& x,
                                    std::span<const int> labels, const AttackConfig& config);

/// Adversarial batch in the dataset cache format (every row in the test split).
FlowCache to_cache(const AdversarialBatch& batch, std::span<const int> labels,
                   const std::vector<std::string>& feature_names, const ScalerParams& scaler);

} // namespace advnids
