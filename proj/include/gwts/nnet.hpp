#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gwts/training.hpp"

namespace gwts::nnet {

enum class Activation { linear, sigmoid, tanh, relu };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation a);

double activate(Activation a, double v);
/// Elementwise activation of a matrix.
Eigen::MatrixXd activate(Activation a, const Eigen::MatrixXd& v);
/// Derivative expressed through the activated value h = act(v); for relu the
/// subgradient at 0 is 0.
Eigen::MatrixXd activate_grad_from_output(Activation a, const Eigen::MatrixXd& h);

/// Network shape: input dimension, hidden layer sizes (possibly none, the
/// "linear" network) and the two activations.
struct MlpSpec {
    int input_dim = 1;
    std::vector<int> hidden_sizes;  // empty => linear model
    Activation hidden_activation = Activation::relu;
    Activation output_activation = Activation::linear;

    /// Total number of weights and biases: sum over layers of
    /// M_l (fan_in + 1), plus M_L + 1 for the output layer.
    int parameter_count() const;
};

void check_spec(const MlpSpec& spec);

/// Dense parameters stored in one flat vector; layer l has a weight matrix
/// (units x fan_in) and a bias vector. The output layer is the last one, with
/// a single unit.
struct MlpParams {
    MlpSpec spec;
    ParamLayout layout;
    Eigen::VectorXd values;

    int n_layers() const { return static_cast<int>(spec.hidden_sizes.size()) + 1; }
    Eigen::Map<Eigen::MatrixXd> weight(int layer) { return layout.mat(values, 2 * layer); }
    Eigen::Map<const Eigen::MatrixXd> weight(int layer) const { return layout.mat(values, 2 * layer); }
    Eigen::Map<Eigen::VectorXd> bias(int layer) { return layout.vec(values, 2 * layer + 1); }
    Eigen::Map<const Eigen::VectorXd> bias(int layer) const { return layout.vec(values, 2 * layer + 1); }
};

/// Zero-initialized parameters for the given shape.
MlpParams make_params(const MlpSpec& spec);
/// Seeded uniform initialization on +-1/sqrt(fan_in).
MlpParams init_params(const MlpSpec& spec, std::uint64_t seed);

/// Single-sample forward pass returning the prediction and every hidden
/// layer's activations.
struct ForwardResult {
    double prediction = 0.0;
    std::vector<Eigen::VectorXd> hidden;
};
ForwardResult forward(const MlpParams& params, const Eigen::VectorXd& x);

/// Batched predictions, rows of x are samples.
Eigen::VectorXd predict(const MlpParams& params, const Eigen::MatrixXd& x);

enum class LossKind { mse, mae };

/// Data term (per series-core metrics) plus lambda * sum of squared weights;
/// biases are excluded from the penalty.
double loss(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat, LossKind kind,
            const MlpParams& params, double lambda);

/// Exact gradient of loss() over a batch (rows of x). Returns the flat
/// gradient alongside the batch data-term loss. Optional per-layer dropout
/// masks (entries 0 or 1/(1-rate)) are applied to the hidden activations.
struct BackpropResult {
    Eigen::VectorXd grad;
    double data_loss = 0.0;
};
BackpropResult backprop(const MlpParams& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        LossKind kind, double lambda,
                        const std::vector<Eigen::MatrixXd>* dropout_masks = nullptr);

enum class Phase { train, predict };

/// Inverted dropout: in the train phase each unit is zeroed independently
/// with probability `rate` and survivors are scaled by 1/(1-rate); in the
/// predict phase the input is returned unchanged.
Eigen::MatrixXd apply_dropout(const Eigen::MatrixXd& h, double rate, std::uint64_t seed, Phase phase);

/// Mini-batch training with Adam steps, early stopping on the validation
/// loss (patience) and restore-best-epoch weights. Deterministic per seed.
struct TrainResult {
    MlpParams params;
    TrainTrace trace;
};
TrainResult train(const MlpSpec& spec, const TrainConfig& config, const Eigen::MatrixXd& x_train,
                  const Eigen::VectorXd& y_train, const Eigen::MatrixXd& x_val,
                  const Eigen::VectorXd& y_val, LossKind kind = LossKind::mse);

}  // namespace gwts::nnet
