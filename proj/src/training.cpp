#include "gwts/training.hpp"

#include <cmath>
#include <numeric>

namespace gwts {

void check_train_config(const TrainConfig& cfg) {
    if (cfg.max_epochs < 1) throw InputError("max_epochs must be >= 1");
    if (cfg.batch_size < 1) throw InputError("batch_size must be >= 1");
    if (cfg.patience < 1) throw InputError("patience must be >= 1");
    if (cfg.weight_decay < 0) throw InputError("weight_decay must be nonnegative");
    if (cfg.learning_rate <= 0) throw InputError("learning_rate must be positive");
    if (cfg.dropout_rate < 0 || cfg.dropout_rate > 0.5) {
        throw InputError("dropout_rate must lie in [0, 0.5]");
    }
}

namespace detail {

TrainTrace run_training(TrainProblem& problem, const TrainConfig& cfg) {
    check_train_config(cfg);
    if (problem.n_train < 1) throw InputError("training set is empty");
    const bool have_val = static_cast<bool>(problem.val_loss);

    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    Eigen::VectorXd& params = *problem.params;
    AdamOptimizer adam(static_cast<int>(params.size()), cfg.learning_rate);
    Eigen::VectorXd grad(params.size());

    std::vector<int> order(static_cast<std::size_t>(problem.n_train));
    std::iota(order.begin(), order.end(), 0);

    TrainTrace trace;
    Eigen::VectorXd best_params = params;
    double best_val = std::numeric_limits<double>::infinity();

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        if (cfg.shuffle) rng.shuffle(order);

        double loss_sum = 0.0;
        for (int start = 0; start < problem.n_train; start += cfg.batch_size) {
            const int count = std::min(cfg.batch_size, problem.n_train - start);
            const std::vector<int> batch(order.begin() + start, order.begin() + start + count);
            grad.setZero();
            const double batch_loss = problem.batch_grad(batch, grad, rng);
            if (!std::isfinite(batch_loss)) {
                throw NumericError("training diverged (non-finite loss) at epoch " +
                                   std::to_string(epoch));
            }
            if (problem.clip_global_norm > 0.0) {
                const double norm = grad.norm();
                if (norm > problem.clip_global_norm) grad *= problem.clip_global_norm / norm;
            }
            adam.step(params, grad);
            loss_sum += batch_loss * count;
        }
        trace.train_loss.push_back(loss_sum / static_cast<double>(problem.n_train));

        if (have_val) {
            const double vl = problem.val_loss();
            if (!std::isfinite(vl)) {
                throw NumericError("training diverged (non-finite validation loss) at epoch " +
                                   std::to_string(epoch));
            }
            trace.val_loss.push_back(vl);
            if (vl < best_val) {
                best_val = vl;
                trace.best_epoch = epoch;
                best_params = params;
            }
        } else {
            trace.best_epoch = epoch;
            best_params = params;
        }
        trace.stopped_epoch = epoch;
        if (problem.on_epoch_end) problem.on_epoch_end(epoch);

        if (have_val && epoch - trace.best_epoch >= cfg.patience) break;
    }

    params = best_params;  // restore-best semantics
    return trace;
}

}  // namespace detail

}  // namespace gwts
