#include "advnids/error.hpp"
#include "advnids/mlp.hpp"

#include <cmath>

namespace advnids {

std::string_view to_string(Activation a) noexcept {
    switch (a) {
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::softmax: return "softmax";
    case Activation::linear: return "linear";
    }
    return "?";
}

Activation activation_from_string(std::string_view text) {
    if (text == "relu") return Activation::relu;
    if (text == "sigmoid") return Activation::sigmoid;
    if (text == "softmax") return Activation::softmax;
    if (text == "linear") return Activation::linear;
    throw SpecError("unknown activation '" + std::string(text) + "'");
}

MlpModel::MlpModel(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw ShapeError("MlpModel: no layers");
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const Layer& l = layers_[i];
        const std::string where = "MlpModel layer " + std::to_string(i);
        if (l.spec.inputs == 0 || l.spec.outputs == 0) throw ShapeError(where + ": zero width");
        if (l.weights.rows() != l.spec.inputs || l.weights.cols() != l.spec.outputs)
            throw ShapeError(where + ": weight shape does not match spec");
        if (l.bias.rows() != 1 || l.bias.cols() != l.spec.outputs)
            throw ShapeError(where + ": bias shape does not match spec");
        if (i > 0 && layers_[i - 1].spec.outputs != l.spec.inputs)
            throw ShapeError(where + ": input width " + std::to_string(l.spec.inputs) +
                             " does not chain from " + std::to_string(layers_[i - 1].spec.outputs));
        if (l.spec.activation == Activation::softmax && i + 1 != layers_.size())
            throw ShapeError(where + ": softmax is only allowed on the output layer");
    }
    if (layers_.back().spec.outputs != kOutputs)
        throw ShapeError("MlpModel: output width must be 2");
    require_finite();
}

MlpModel MlpModel::initialize(const std::vector<LayerSpec>& specs, RngStream& rng) {
    std::vector<Layer> layers;
    layers.reserve(specs.size());
    for (const auto& spec : specs) {
        if (spec.inputs == 0 || spec.outputs == 0) throw ShapeError("initialize: zero-width layer");
        const double limit =
            std::sqrt(6.0 / static_cast<double>(spec.inputs + spec.outputs));
        layers.push_back({spec, init_uniform(rng, spec.inputs, spec.outputs, limit),
                          Matrix(1, spec.outputs)});
    }
    return MlpModel(std::move(layers));
}

std::vector<LayerSpec> MlpModel::architecture(std::size_t inputs,
                                              std::span<const std::size_t> hidden,
                                              Activation hidden_activation, Activation head) {
    std::vector<LayerSpec> specs;
    std::size_t width = inputs;
    for (std::size_t h : hidden) {
        specs.push_back({width, h, hidden_activation});
        width = h;
    }
    specs.push_back({width, kOutputs, head});
    return specs;
}

std::vector<LayerSpec> MlpModel::specs() const {
    std::vector<LayerSpec> out;
    for (const auto& l : layers_) out.push_back(l.spec);
    return out;
}

std::size_t MlpModel::parameter_count() const noexcept {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.weights.size() + l.bias.size();
    return n;
}

std::vector<std::span<double>> MlpModel::parameters() {
    std::vector<std::span<double>> out;
    for (auto& l : layers_) {
        out.push_back(l.weights.data());
        out.push_back(l.bias.data());
    }
    return out;
}

std::vector<std::span<const double>> MlpModel::parameters() const {
    std::vector<std::span<const double>> out;
    for (const auto& l : layers_) {
        out.push_back(l.weights.data());
        out.push_back(l.bias.data());
    }
    return out;
}

void MlpModel::require_finite() const {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        layers_[i].weights.require_finite("layer " + std::to_string(i) + " weights");
        layers_[i].bias.require_finite("layer " + std::to_string(i) + " bias");
    }
}

bool operator==(const MlpModel& a, const MlpModel& b) {
    if (a.layers_.size() != b.layers_.size()) return false;
    for (std::size_t i = 0; i < a.layers_.size(); ++i) {
        const auto& x = a.layers_[i];
        const auto& y = b.layers_[i];
        if (!(x.spec == y.spec) || !(x.weights == y.weights) || !(x.bias == y.bias)) return false;
    }
    return true;
}

double Gradients::norm() const {
    double sq = 0.0;
    for (const auto& t : tensors)
        for (double v : t.data()) sq += v * v;
    return std::sqrt(sq);
}

} // namespace advnids
