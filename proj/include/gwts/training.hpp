#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "gwts/error.hpp"
#include "gwts/rng.hpp"

namespace gwts {

/// Training hyperparameters shared by the feedforward and recurrent trainers.
struct TrainConfig {
    int max_epochs = 1000;
    int batch_size = 32;
    int patience = 10;
    double weight_decay = 0.0;   // lambda on the squared weights, biases excluded
    double learning_rate = 1e-3;
    double dropout_rate = 0.0;   // in [0, 0.5]
    std::uint64_t seed = 0;
    bool shuffle = false;        // off by default: sequence order is preserved
};

void check_train_config(const TrainConfig& cfg);

/// Per-epoch loss record. Losses are the data term only (no decay penalty):
/// train_loss is the sample-weighted mean of batch losses seen during the
/// epoch, val_loss is a full pass over the validation set after the epoch.
struct TrainTrace {
    std::vector<double> train_loss;
    std::vector<double> val_loss;
    int best_epoch = 0;     // 1-based epoch with minimal validation loss
    int stopped_epoch = 0;  // 1-based last epoch run
};

/// Layout of a flat parameter vector as a list of shaped tensors. Weight
/// tensors participate in the decay penalty; bias tensors do not.
class ParamLayout {
public:
    int add(int rows, int cols, bool weight) {
        offsets_.push_back(total_);
        shapes_.push_back({rows, cols, weight});
        total_ += rows * cols;
        return static_cast<int>(shapes_.size()) - 1;
    }

    int total_size() const { return total_; }
    int tensor_count() const { return static_cast<int>(shapes_.size()); }
    int rows(int i) const { return shapes_[static_cast<std::size_t>(i)].rows; }
    int cols(int i) const { return shapes_[static_cast<std::size_t>(i)].cols; }
    bool is_weight(int i) const { return shapes_[static_cast<std::size_t>(i)].weight; }

    Eigen::Map<Eigen::MatrixXd> mat(Eigen::VectorXd& v, int i) const {
        const auto& s = shapes_[static_cast<std::size_t>(i)];
        return {v.data() + offsets_[static_cast<std::size_t>(i)], s.rows, s.cols};
    }
    Eigen::Map<const Eigen::MatrixXd> mat(const Eigen::VectorXd& v, int i) const {
        const auto& s = shapes_[static_cast<std::size_t>(i)];
        return {v.data() + offsets_[static_cast<std::size_t>(i)], s.rows, s.cols};
    }
    Eigen::Map<Eigen::VectorXd> vec(Eigen::VectorXd& v, int i) const {
        const auto& s = shapes_[static_cast<std::size_t>(i)];
        return {v.data() + offsets_[static_cast<std::size_t>(i)], s.rows * s.cols};
    }
    Eigen::Map<const Eigen::VectorXd> vec(const Eigen::VectorXd& v, int i) const {
        const auto& s = shapes_[static_cast<std::size_t>(i)];
        return {v.data() + offsets_[static_cast<std::size_t>(i)], s.rows * s.cols};
    }

    double weight_squared_norm(const Eigen::VectorXd& v) const {
        double acc = 0.0;
        for (int i = 0; i < tensor_count(); ++i) {
            if (is_weight(i)) acc += vec(v, i).squaredNorm();
        }
        return acc;
    }

    /// Adds the decay gradient 2 * lambda * w over the weight tensors.
    void add_decay_gradient(const Eigen::VectorXd& params, double lambda,
                            Eigen::VectorXd& grad) const {
        if (lambda == 0.0) return;
        for (int i = 0; i < tensor_count(); ++i) {
            if (is_weight(i)) vec(grad, i) += 2.0 * lambda * vec(params, i);
        }
    }

    /// Seeded uniform initialization on +-1/sqrt(fan_in), fan_in = tensor
    /// columns; bias tensors start at zero.
    void init_uniform(Eigen::VectorXd& params, Rng& rng) const {
        params.setZero();
        for (int i = 0; i < tensor_count(); ++i) {
            if (!is_weight(i)) continue;
            const double bound = 1.0 / std::sqrt(static_cast<double>(cols(i)));
            auto w = vec(params, i);
            for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = rng.uniform(-bound, bound);
        }
    }

private:
    struct Shape {
        int rows, cols;
        bool weight;
    };
    std::vector<Shape> shapes_;
    std::vector<int> offsets_;
    int total_ = 0;
};

/// Adam with the usual bias correction (moment decays 0.9/0.999, eps 1e-8).
class AdamOptimizer {
public:
    AdamOptimizer(int n, double lr) : lr_(lr), m_(Eigen::VectorXd::Zero(n)), v_(Eigen::VectorXd::Zero(n)) {}

    void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
        ++t_;
        m_ = 0.9 * m_ + 0.1 * grad;
        v_ = 0.999 * v_.array() + 0.001 * grad.array().square();
        const double c1 = 1.0 - std::pow(0.9, t_);
        const double c2 = 1.0 - std::pow(0.999, t_);
        params.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + 1e-8);
    }

private:
    double lr_;
    int t_ = 0;
    Eigen::VectorXd m_, v_;
};

namespace detail {

/// One mini-batch training problem: the model behind it owns the parameter
/// vector and exposes batch gradients and a validation metric.
struct TrainProblem {
    int n_train = 0;
    Eigen::VectorXd* params = nullptr;
    /// Computes the full-loss gradient for the given sample indices and
    /// returns the batch's data-term loss. The rng drives dropout masks.
    std::function<double(const std::vector<int>& batch, Eigen::VectorXd& grad, Rng& rng)> batch_grad;
    /// Data-term loss on the validation set; unset when there is none.
    std::function<double()> val_loss;
    double clip_global_norm = 0.0;  // 0 disables clipping
    /// Called after each epoch with the 1-based epoch number (current params).
    std::function<void(int)> on_epoch_end;
};

/// Mini-batch loop with early stopping on the validation loss and
/// restore-best-epoch semantics. Deterministic for a given seed/config.
TrainTrace run_training(TrainProblem& problem, const TrainConfig& cfg);

}  // namespace detail

}  // namespace gwts
