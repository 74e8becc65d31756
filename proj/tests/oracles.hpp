#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the code paths it is used to check.

#include "advnids/evaluation.hpp"
#include "advnids/mlp.hpp"
#include "advnids/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using advnids::Activation;
using advnids::Matrix;
using advnids::MlpModel;

inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

struct Trace {
    std::vector<std::vector<double>> pre;  // per layer, row-major pre-activations
    std::vector<double> probs;             // n × 2
};

// Straight-line forward pass on nested loops.
inline Trace naive_forward(const MlpModel& model, const Matrix& x) {
    Trace t;
    std::size_t n = x.rows();
    std::vector<double> a(x.data().begin(), x.data().end());
    std::size_t width = x.cols();
    for (const auto& layer : model.layers()) {
        const std::size_t out = layer.spec.outputs;
        std::vector<double> z(n * out);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t j = 0; j < out; ++j) {
                double acc = layer.bias(0, j);
                for (std::size_t k = 0; k < width; ++k) acc += a[r * width + k] * layer.weights(k, j);
                z[r * out + j] = acc;
            }
        t.pre.push_back(z);
        std::vector<double> next(z);
        for (std::size_t r = 0; r < n; ++r) {
            switch (layer.spec.activation) {
            case Activation::relu:
                for (std::size_t j = 0; j < out; ++j) next[r * out + j] = std::max(0.0, z[r * out + j]);
                break;
            case Activation::sigmoid:
                for (std::size_t j = 0; j < out; ++j) next[r * out + j] = 1.0 / (1.0 + std::exp(-z[r * out + j]));
                break;
            case Activation::softmax: {
                double total = 0.0;
                for (std::size_t j = 0; j < out; ++j) total += std::exp(z[r * out + j]);
                for (std::size_t j = 0; j < out; ++j) next[r * out + j] = std::exp(z[r * out + j]) / total;
                break;
            }
            case Activation::linear:
                break;
            }
        }
        a = std::move(next);
        width = out;
    }
    t.probs = a;
    return t;
}

inline double naive_loss(const MlpModel& model, const Matrix& x, const Matrix& targets) {
    const auto p = naive_forward(model, x).probs;
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double q = std::clamp(p[i], 1e-12, 1.0 - 1e-12);
        const double y = targets.data()[i];
        total += -(y * std::log(q) + (1.0 - y) * std::log(1.0 - q));
    }
    return total / static_cast<double>(p.size());
}

// Central differences over every parameter, h = 1e-5.
inline std::vector<std::vector<double>> fd_params(const MlpModel& model, const Matrix& x,
                                                  const Matrix& targets, double h = 1e-5) {
    MlpModel probe = model;
    std::vector<std::vector<double>> out;
    auto params = probe.parameters();
    for (auto& tensor : params) {
        std::vector<double> g(tensor.size());
        for (std::size_t i = 0; i < tensor.size(); ++i) {
            const double saved = tensor[i];
            tensor[i] = saved + h;
            const double up = naive_loss(probe, x, targets);
            tensor[i] = saved - h;
            const double down = naive_loss(probe, x, targets);
            tensor[i] = saved;
            g[i] = (up - down) / (2.0 * h);
        }
        out.push_back(std::move(g));
    }
    return out;
}

inline Matrix fd_input(const MlpModel& model, const Matrix& x, const Matrix& targets, double h = 1e-5) {
    Matrix probe = x;
    Matrix g(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = probe.data()[i];
        probe.data()[i] = saved + h;
        const double up = naive_loss(model, probe, targets);
        probe.data()[i] = saved - h;
        const double down = naive_loss(model, probe, targets);
        probe.data()[i] = saved;
        g.data()[i] = (up - down) / (2.0 * h);
    }
    return g;
}

// |a - b| relative to the larger magnitude, floored so that coordinates
// that are zero up to roundoff compare absolutely.
inline double rel_err(double a, double b, double floor = 1e-6) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

// Smallest |pre-activation| over ReLU layers: distance to the kink.
inline double relu_margin(const MlpModel& model, const Matrix& x) {
    const auto t = naive_forward(model, x);
    double margin = 1e300;
    for (std::size_t l = 0; l < model.layers().size(); ++l)
        if (model.layers()[l].spec.activation == Activation::relu)
            for (double z : t.pre[l]) margin = std::min(margin, std::abs(z));
    return margin;
}

struct RandomNet {
    MlpModel model;
    Matrix x;
    Matrix targets;
};

// ≤3 layers, ≤10 units, given head; inputs away from ReLU kinks and the
// probability clamp so finite differences are well defined.
inline RandomNet random_net(advnids::RngStream& rng, Activation head) {
    for (;;) {
        const std::size_t depth = 1 + rng.bounded(3);
        const std::size_t inputs = 1 + rng.bounded(10);
        std::vector<advnids::LayerSpec> specs;
        std::size_t width = inputs;
        for (std::size_t l = 0; l + 1 < depth; ++l) {
            const std::size_t out = 1 + rng.bounded(10);
            const Activation hidden = rng.bounded(4) == 0 ? Activation::sigmoid : Activation::relu;
            specs.push_back({width, out, hidden});
            width = out;
        }
        specs.push_back({width, 2, head});
        std::vector<advnids::Layer> layers;
        for (const auto& s : specs) {
            Matrix w(s.inputs, s.outputs), b(1, s.outputs);
            for (double& v : w.data()) v = rng.uniform(-1.0, 1.0);
            for (double& v : b.data()) v = rng.uniform(-0.5, 0.5);
            layers.push_back({s, w, b});
        }
        MlpModel model(layers);
        const std::size_t n = 1 + rng.bounded(4);
        Matrix x(n, inputs);
        for (double& v : x.data()) v = rng.uniform(-2.0, 2.0);
        std::vector<int> labels(n);
        for (auto& l : labels) l = static_cast<int>(rng.bounded(2));
        if (relu_margin(model, x) < 1e-3) continue;
        const auto probs = naive_forward(model, x).probs;
        const bool saturated = std::any_of(probs.begin(), probs.end(),
                                           [](double p) { return p < 1e-6 || p > 1.0 - 1e-6; });
        if (saturated) continue;
        return {std::move(model), std::move(x), advnids::one_hot(labels)};
    }
}

// Metrics by per-sample counting, written out from the textbook definitions.
struct BruteReport {
    double accuracy;
    double precision[2], recall[2], f1[2];
    double support[2];
    double macro_p, macro_r, macro_f1;
    double weighted_p, weighted_r, weighted_f1;
};

inline BruteReport brute_report(const std::vector<int>& labels, const std::vector<int>& preds) {
    BruteReport b{};
    const double n = static_cast<double>(labels.size());
    double correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) correct += labels[i] == preds[i];
    b.accuracy = correct / n;
    for (int c = 0; c < 2; ++c) {
        double hit = 0, predicted = 0, actual = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            hit += labels[i] == c && preds[i] == c;
            predicted += preds[i] == c;
            actual += labels[i] == c;
        }
        b.precision[c] = predicted > 0 ? hit / predicted : 0.0;
        b.recall[c] = actual > 0 ? hit / actual : 0.0;
        const double s = b.precision[c] + b.recall[c];
        b.f1[c] = s > 0 ? 2.0 * b.precision[c] * b.recall[c] / s : 0.0;
        b.support[c] = actual;
    }
    b.macro_p = (b.precision[0] + b.precision[1]) / 2.0;
    b.macro_r = (b.recall[0] + b.recall[1]) / 2.0;
    b.macro_f1 = (b.f1[0] + b.f1[1]) / 2.0;
    b.weighted_p = b.support[0] / n * b.precision[0] + b.support[1] / n * b.precision[1];
    b.weighted_r = b.support[0] / n * b.recall[0] + b.support[1] / n * b.recall[1];
    b.weighted_f1 = b.support[0] / n * b.f1[0] + b.support[1] / n * b.f1[1];
    return b;
}

// All positive/negative pairs; ties count ½.
inline double brute_auc(const std::vector<int>& labels, const std::vector<double>& scores) {
    double pos = 0, neg = 0, twice_wins = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        pos += labels[i] == 1;
        neg += labels[i] == 0;
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j] != 0) continue;
            if (scores[i] > scores[j]) twice_wins += 2;
            else if (scores[i] == scores[j]) twice_wins += 1;
        }
    }
    return twice_wins / 2.0 / (pos * neg);
}

// Exact FGSM contract on one coordinate: either the clamped, correctly
// rounded step, or that step pulled back one ulp when rounding overshot eps.
inline bool fgsm_coordinate_ok(double x, double adv, double g, double eps, double lo, double hi) {
    if (adv < lo || adv > hi) return false;
    if (std::abs(adv - x) > eps) return false;
    const double s = g > 0 ? 1.0 : (g < 0 ? -1.0 : 0.0);
    const double raw = x + eps * s;
    if (raw > hi) return adv == hi;
    if (raw < lo) return adv == lo;
    return adv == raw || adv == std::nextafter(raw, x);
}

} // namespace oracle
