#include "advnids/error.hpp"
#include "advnids/mlp.hpp"

#include <cmath>

namespace advnids {

AdamState AdamState::for_model(const MlpModel& model, AdamConstants constants) {
    AdamState s;
    s.constants = constants;
    for (auto p : model.parameters()) {
        s.m.emplace_back(p.size(), 0.0);
        s.v.emplace_back(p.size(), 0.0);
    }
    return s;
}

void adam_step(MlpModel& model, const Gradients& grads, AdamState& state, double learning_rate) {
    auto params = model.parameters();
    if (grads.tensors.size() != params.size() || state.m.size() != params.size() ||
        state.v.size() != params.size())
        throw ShapeError("adam_step: gradient/state layout does not match the model");
    const auto& k = state.constants;
    ++state.t;
    const double t = static_cast<double>(state.t);
    const double correct1 = 1.0 - std::pow(k.beta1, t);
    const double correct2 = 1.0 - std::pow(k.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto g = grads.tensors[i].data();
        if (g.size() != params[i].size() || state.m[i].size() != g.size())
            throw ShapeError("adam_step: tensor " + std::to_string(i) + " size mismatch");
        auto& m = state.m[i];
        auto& v = state.v[i];
        auto p = params[i];
        for (std::size_t j = 0; j < g.size(); ++j) {
            m[j] = k.beta1 * m[j] + (1.0 - k.beta1) * g[j];
            v[j] = k.beta2 * v[j] + (1.0 - k.beta2) * g[j] * g[j];
            const double m_hat = m[j] / correct1;
            const double v_hat = v[j] / correct2;
            p[j] -= learning_rate * m_hat / (std::sqrt(v_hat) + k.epsilon);
        }
    }
    model.require_finite();
}

} // namespace advnids
