#include "advnids/error.hpp"
#include "advnids/mlp.hpp"

#include <cmath>
#include <numeric>

namespace advnids {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
        throw SpecError("train: learning rate must be positive");
    if (batch_size < 1) throw SpecError("train: batch size must be at least 1");
    if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
        throw SpecError("train: validation fraction must lie in [0, 1)");
    if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0 &&
          adam.epsilon > 0.0))
        throw SpecError("train: invalid Adam constants");
}

std::size_t validation_rows(std::size_t n, double validation_fraction) {
    if (validation_fraction <= 0.0) return 0;
    const double keep = static_cast<double>(n) * (1.0 - validation_fraction);
    const auto train_rows = static_cast<std::size_t>(std::floor(keep + 1e-9));
    return n - std::min(n, train_rows);
}

TrainResult train(const MlpModel& initial, const Matrix& x, std::span<const int> labels,
                  const TrainConfig& config) {
    config.validate();
    if (x.rows() != labels.size()) throw ShapeError("train: feature and label counts differ");
    if (x.cols() != initial.input_width()) throw ShapeError("train: feature width mismatch");
    if (x.rows() == 0) throw DataError("train: empty training set");

    const std::size_t n_val = validation_rows(x.rows(), config.validation_fraction);
    const std::size_t n_fit = x.rows() - n_val;
    if (config.validation_fraction > 0.0 && n_val == 0)
        throw DataError("train: validation split is empty; too few rows for fraction " +
                        std::to_string(config.validation_fraction));
    if (n_fit == 0) throw DataError("train: no rows left for fitting after the validation split");

    const Matrix fit_x = x.slice_rows(0, n_fit);
    const std::vector<int> fit_y(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n_fit));
    const Matrix val_x = x.slice_rows(n_fit, x.rows());
    const std::vector<int> val_y(labels.begin() + static_cast<std::ptrdiff_t>(n_fit), labels.end());
    const Matrix val_targets = one_hot(val_y);

    TrainResult result{initial, {}, {}};
    result.checkpoint.best_layers = initial.layers();
    result.checkpoint.monitor = n_val > 0 ? "val_loss" : "loss";

    MlpModel model = initial;
    AdamState adam = AdamState::for_model(model, config.adam);
    RngStream order_rng = RngStream(config.seed).split();
    std::vector<std::size_t> order(n_fit);

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        order = shuffle_indices(order_rng, n_fit);
        double loss_sum = 0.0;
        std::size_t hits = 0;
        for (std::size_t start = 0; start < n_fit; start += config.batch_size) {
            const std::size_t end = std::min(n_fit, start + config.batch_size);
            const std::span<const std::size_t> batch(order.data() + start, end - start);
            const Matrix bx = fit_x.select_rows(batch);
            std::vector<int> by(batch.size());
            for (std::size_t i = 0; i < batch.size(); ++i) by[i] = fit_y[batch[i]];

            Backprop bp = backprop(model, bx, one_hot(by), true, false);
            loss_sum += bp.loss * static_cast<double>(batch.size());
            const auto predicted = predict_labels(bp.probs);
            for (std::size_t i = 0; i < by.size(); ++i) hits += predicted[i] == by[i];
            adam_step(model, bp.params, adam, config.learning_rate);
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(n_fit);
        rec.train_accuracy = static_cast<double>(hits) / static_cast<double>(n_fit);
        double monitored = rec.train_loss;
        if (n_val > 0) {
            const Matrix probs = forward(model, val_x);
            rec.val_loss = bce_loss(probs, val_targets);
            rec.val_accuracy = accuracy(val_y, predict_labels(probs));
            monitored = rec.val_loss;
        }
        if (monitored < result.checkpoint.best_loss) {
            result.checkpoint.best_loss = monitored;
            result.checkpoint.best_epoch = epoch;
            result.checkpoint.best_layers = model.layers();
        }
        rec.best_loss = result.checkpoint.best_loss;
        result.history.push_back(rec);
    }

    result.model = MlpModel(result.checkpoint.best_layers);
    return result;
}

} // namespace advnids
