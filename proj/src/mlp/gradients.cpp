#include "advnids/error.hpp"
#include "advnids/mlp.hpp"

#include <algorithm>
#include <cmath>

namespace advnids {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void activate(Activation act, Matrix& z) {
    switch (act) {
    case Activation::relu:
        for (double& v : z.data()) v = v > 0.0 ? v : 0.0;
        break;
    case Activation::sigmoid:
        for (double& v : z.data()) v = sigmoid(v);
        break;
    case Activation::softmax:
        for (std::size_t r = 0; r < z.rows(); ++r) {
            auto row = z.row(r);
            const double peak = *std::max_element(row.begin(), row.end());
            double total = 0.0;
            for (double& v : row) {
                v = std::exp(v - peak);
                total += v;
            }
            for (double& v : row) v /= total;
        }
        break;
    case Activation::linear:
        break;
    }
}

// Activations a_0 = x, a_1, ..., a_L.
std::vector<Matrix> forward_trace(const MlpModel& model, const Matrix& x) {
    if (x.cols() != model.input_width())
        throw ShapeError("forward: input has " + std::to_string(x.cols()) +
                         " features, model expects " + std::to_string(model.input_width()));
    std::vector<Matrix> acts;
    acts.reserve(model.layers().size() + 1);
    acts.push_back(x);
    for (const auto& layer : model.layers()) {
        Matrix z = add_row(matmul(acts.back(), layer.weights), layer.bias);
        activate(layer.spec.activation, z);
        z.require_finite("forward");
        acts.push_back(std::move(z));
    }
    return acts;
}

void require_targets(const Matrix& probs, const Matrix& targets) {
    if (probs.rows() != targets.rows() || probs.cols() != targets.cols())
        throw ShapeError("loss: probabilities and targets differ in shape");
    if (probs.rows() == 0) throw ShapeError("loss: empty batch");
}

bool clamped(double p) { return p <= kProbClamp || p >= 1.0 - kProbClamp; }

} // namespace

Matrix forward(const MlpModel& model, const Matrix& x) {
    return std::move(forward_trace(model, x).back());
}

Matrix one_hot(std::span<const int> labels) {
    Matrix out(labels.size(), 2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw DataError("one_hot: label outside {0,1}");
        out(i, static_cast<std::size_t>(labels[i])) = 1.0;
    }
    return out;
}

double bce_loss(const Matrix& probs, const Matrix& targets) {
    require_targets(probs, targets);
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = std::clamp(probs.data()[i], kProbClamp, 1.0 - kProbClamp);
        const double y = targets.data()[i];
        total -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    }
    return total / static_cast<double>(probs.size());
}

Backprop backprop(const MlpModel& model, const Matrix& x, const Matrix& targets,
                  bool want_params, bool want_input) {
    auto acts = forward_trace(model, x);
    const Matrix& probs = acts.back();
    require_targets(probs, targets);

    Backprop out;
    out.loss = bce_loss(probs, targets);
    const double norm = 1.0 / static_cast<double>(probs.size());
    const auto& layers = model.layers();

    // Gradient with respect to the head's pre-activation.
    Matrix delta(probs.rows(), probs.cols());
    switch (model.head()) {
    case Activation::sigmoid:
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const double p = probs.data()[i];
            delta.data()[i] = clamped(p) ? 0.0 : (p - targets.data()[i]) * norm;
        }
        break;
    case Activation::softmax:
        for (std::size_t r = 0; r < probs.rows(); ++r) {
            const auto p = probs.row(r);
            const auto y = targets.row(r);
            auto d = delta.row(r);
            double dot = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) {
                const double dp = clamped(p[k]) ? 0.0 : (p[k] - y[k]) / (p[k] * (1.0 - p[k])) * norm;
                d[k] = dp;
                dot += p[k] * dp;
            }
            for (std::size_t k = 0; k < p.size(); ++k) d[k] = p[k] * (d[k] - dot);
        }
        break;
    case Activation::relu:
    case Activation::linear:
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const double p = probs.data()[i];
            const double dp = clamped(p) ? 0.0 : (p - targets.data()[i]) / (p * (1.0 - p)) * norm;
            delta.data()[i] = model.head() == Activation::relu && p <= 0.0 ? 0.0 : dp;
        }
        break;
    }

    if (want_params) out.params.tensors.resize(2 * layers.size());
    for (std::size_t l = layers.size(); l-- > 0;) {
        if (want_params) {
            out.params.tensors[2 * l] = matmul_tn(acts[l], delta);
            out.params.tensors[2 * l + 1] = column_sums(delta);
        }
        if (l == 0 && !want_input) break;
        Matrix upstream = matmul_nt(delta, layers[l].weights);
        if (l == 0) {
            out.input = std::move(upstream);
            break;
        }
        const Matrix& a = acts[l];
        switch (layers[l - 1].spec.activation) {
        case Activation::relu:
            for (std::size_t i = 0; i < upstream.size(); ++i)
                if (a.data()[i] <= 0.0) upstream.data()[i] = 0.0;
            break;
        case Activation::sigmoid:
            for (std::size_t i = 0; i < upstream.size(); ++i)
                upstream.data()[i] *= a.data()[i] * (1.0 - a.data()[i]);
            break;
        case Activation::linear:
            break;
        case Activation::softmax:
            throw ShapeError("backprop: softmax on a hidden layer");
        }
        delta = std::move(upstream);
    }
    out.probs = std::move(acts.back());
    return out;
}

Gradients grad_params(const MlpModel& model, const Matrix& x, const Matrix& targets) {
    return std::move(backprop(model, x, targets, true, false).params);
}

Matrix grad_input(const MlpModel& model, const Matrix& x, const Matrix& targets) {
    return std::move(backprop(model, x, targets, false, true).input);
}

std::vector<int> predict_labels(const Matrix& probs) {
    if (probs.cols() != 2) throw ShapeError("predict_labels: expected two output columns");
    std::vector<int> out(probs.rows());
    for (std::size_t r = 0; r < probs.rows(); ++r) out[r] = probs(r, 1) > probs(r, 0) ? 1 : 0;
    return out;
}

std::vector<int> predict_labels(const MlpModel& model, const Matrix& x) {
    return predict_labels(forward(model, x));
}

std::vector<double> positive_scores(const Matrix& probs) {
    if (probs.cols() != 2) throw ShapeError("positive_scores: expected two output columns");
    std::vector<double> out(probs.rows());
    for (std::size_t r = 0; r < probs.rows(); ++r) out[r] = probs(r, 1);
    return out;
}

double accuracy(std::span<const int> labels, std::span<const int> predicted) {
    if (labels.size() != predicted.size()) throw ShapeError("accuracy: length mismatch");
    if (labels.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) hits += labels[i] == predicted[i];
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

} // namespace advnids
