#include "advnids/fgsm.hpp"

#include "advnids/error.hpp"
#include "advnids/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace advnids {

namespace {
// Gradient rows per backward pass; bounds activation memory on large test sets.
constexpr std::size_t kChunkRows = 8192;
} // namespace

ClipBounds clip_bounds_from(const Matrix& features) {
    if (features.empty()) throw DataError("clip_bounds_from: empty feature matrix");
    const auto [lo, hi] = std::minmax_element(features.data().begin(), features.data().end());
    return {*lo, *hi};
}

std::vector<double> AttackConfig::default_epsilons() {
    return {0.0001, 0.0002, 0.0003, 0.0004, 0.0005, 0.0006, 0.0007, 0.0008, 0.0009};
}

void AttackConfig::validate() const {
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0) || !std::isfinite(epsilons[i]))
            throw SpecError("attack: epsilons must be positive and finite");
        if (i > 0 && !(epsilons[i] > epsilons[i - 1]))
            throw SpecError("attack: epsilons must be strictly ascending");
    }
    if (!std::isfinite(clip.low) || !std::isfinite(clip.high) || clip.low > clip.high)
        throw SpecError("attack: clip bounds must be finite with low <= high");
}

Matrix gradient_sign(const MlpModel& model, const Matrix& x, std::span<const int> labels) {
    if (labels.size() != x.rows()) throw ShapeError("fgsm: label count differs from row count");
    // The sign pattern is invariant to the positive 1/n loss normalisation,
    // so per-chunk gradients give the same signs as one full-batch pass.
    Matrix out(x.rows(), x.cols());
    for (std::size_t start = 0; start < x.rows(); start += kChunkRows) {
        const std::size_t end = std::min(x.rows(), start + kChunkRows);
        const Matrix grad = grad_input(model, x.slice_rows(start, end),
                                       one_hot(labels.subspan(start, end - start)));
        const Matrix s = sign(grad);
        std::copy(s.data().begin(), s.data().end(), out.row(start).begin());
    }
    return out;
}

namespace {

void check_inputs(const MlpModel& model, const Matrix& x, double epsilon, ClipBounds clip) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw SpecError("fgsm: epsilon must be finite and non-negative");
    if (clip.low > clip.high) throw SpecError("fgsm: clip low exceeds clip high");
    if (x.cols() != model.input_width()) throw ShapeError("fgsm: feature width mismatch");
}

AdversarialBatch apply_step(const Matrix& x, const Matrix& direction, double epsilon,
                            ClipBounds clip, std::string source, std::string clean) {
    AdversarialBatch batch;
    batch.epsilon = epsilon;
    batch.source_model = std::move(source);
    batch.clean_digest = std::move(clean);
    if (epsilon == 0.0) {
        batch.features = x;
        return batch;
    }
    batch.features = Matrix(x.rows(), x.cols());
    if (kernels::parallel_enabled())
        kernels::omp::signed_step(x.data(), direction.data(), epsilon, clip.low, clip.high,
                                  batch.features.data());
    else
        kernels::serial::signed_step(x.data(), direction.data(), epsilon, clip.low, clip.high,
                                     batch.features.data());
    batch.features.require_finite("fgsm");
    return batch;
}

} // namespace

AdversarialBatch fgsm(const MlpModel& model, const Matrix& x, std::span<const int> labels,
                      double epsilon, ClipBounds clip) {
    check_inputs(model, x, epsilon, clip);
    const Matrix direction = epsilon == 0.0 ? Matrix() : gradient_sign(model, x, labels);
    return apply_step(x, direction, epsilon, clip, model_digest(model), matrix_digest(x));
}

std::vector<AdversarialBatch> sweep(const MlpModel& model, const Matrix& x,
                                    std::span<const int> labels, const AttackConfig& config) {
    config.validate();
    std::vector<AdversarialBatch> out;
    if (config.epsilons.empty()) return out;
    check_inputs(model, x, config.epsilons.front(), config.clip);
    // The sign pattern does not depend on epsilon, so one backward pass serves the sweep.
    const Matrix direction = gradient_sign(model, x, labels);
    const std::string source = model_digest(model);
    const std::string clean = matrix_digest(x);
    out.reserve(config.epsilons.size());
    for (double eps : config.epsilons)
        out.push_back(apply_step(x, direction, eps, config.clip, source, clean));
    return out;
}

FlowCache to_cache(const AdversarialBatch& batch, std::span<const int> labels,
                   const std::vector<std::string>& feature_names, const ScalerParams& scaler) {
    if (labels.size() != batch.features.rows())
        throw ShapeError("to_cache: label count differs from batch rows");
    FlowCache c;
    c.kind = FlowCache::Kind::adversarial;
    c.feature_names = feature_names;
    c.features = batch.features;
    c.labels.assign(labels.begin(), labels.end());
    c.split.test.resize(labels.size());
    std::iota(c.split.test.begin(), c.split.test.end(), std::size_t{0});
    c.scaler = scaler;
    c.epsilon = batch.epsilon;
    c.provenance = batch.provenance();
    return c;
}

} // namespace advnids
