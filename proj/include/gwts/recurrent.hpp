#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "gwts/nnet.hpp"
#include "gwts/training.hpp"

namespace gwts::rnn {

enum class CellKind { jordan, elman, lstm };

CellKind cell_kind_from_string(const std::string& name);
std::string to_string(CellKind k);

/// Shape of a sequence model. Jordan/Elman cells are single-layer; the LSTM
/// supports 1 or 2 stacked layers (layer 2 consumes layer 1's hidden
/// sequence). Gate activations are fixed to sigmoid/tanh; the hidden
/// activation applies to Jordan/Elman cells only.
struct SequenceSpec {
    CellKind kind = CellKind::lstm;
    int input_dim = 1;
    int units = 32;
    int layers = 1;
    nnet::Activation hidden_activation = nnet::Activation::tanh;
    nnet::Activation output_activation = nnet::Activation::linear;
};

void check_spec(const SequenceSpec& spec);

/// All trainable parameters in one flat vector with shaped views.
///
/// Jordan/Elman: bias alpha0 (M), input weights alpha1 (M x p), feedback
/// weights alpha2 (M x 1 on the previous prediction for Jordan, M x M on the
/// previous hidden vector for Elman), output beta0/beta1.
///
/// LSTM: per layer and per block (input gate, forget gate, output gate,
/// candidate state) a bias (M), input weights (M x fan_in) and recurrent
/// weights (M x M); output beta0/beta1 on the top layer's final hidden
/// vector.
struct SequenceParams {
    SequenceSpec spec;
    ParamLayout layout;
    Eigen::VectorXd values;

    // Jordan/Elman tensor ids.
    int rnn_alpha0 = -1, rnn_alpha1 = -1, rnn_alpha2 = -1;
    // LSTM tensor ids, per layer, blocks ordered input/forget/output/candidate.
    struct GateIds {
        int wx = -1, wh = -1, bias = -1;
    };
    std::vector<std::array<GateIds, 4>> gates;
    int out_w = -1, out_b = -1;

    Eigen::Map<const Eigen::MatrixXd> mat(int id) const { return layout.mat(values, id); }
    Eigen::Map<const Eigen::VectorXd> vec(int id) const { return layout.vec(values, id); }
    Eigen::Map<Eigen::MatrixXd> mat(int id) { return layout.mat(values, id); }
    Eigen::Map<Eigen::VectorXd> vec(int id) { return layout.vec(values, id); }

    int layer_input_dim(int layer) const { return layer == 0 ? spec.input_dim : spec.units; }
};

SequenceParams make_params(const SequenceSpec& spec);
/// Seeded uniform +-1/sqrt(fan_in) weights; biases zero except the LSTM
/// forget-gate bias, which starts at 1.
SequenceParams init_params(const SequenceSpec& spec, std::uint64_t seed);

/// Hidden output and memory cell state of one LSTM layer.
struct CellState {
    Eigen::VectorXd h;
    Eigen::VectorXd s;
};

/// One Jordan step: H_m = act_h(alpha0_m + alpha1_m . x + alpha2_m * yhat_prev),
/// yhat = act_y(beta0 + beta1 . H). The fed-back value is the previous
/// prediction, never the observed outcome; use 0 at the first step.
struct RnnStepResult {
    Eigen::VectorXd h;
    double yhat = 0.0;
};
RnnStepResult jordan_step(const SequenceParams& params, const Eigen::VectorXd& x, double yhat_prev);

/// One Elman step: H_m = act_h(alpha0_m + alpha1_m . x + alpha2_m . H_prev);
/// H_prev = 0 at the first step.
RnnStepResult elman_step(const SequenceParams& params, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& h_prev);

/// One LSTM cell step for the given layer, with gate values exposed.
struct LstmStepDetail {
    Eigen::VectorXd input_gate, forget_gate, output_gate, candidate;
    CellState state;
};
LstmStepDetail lstm_cell_step_detail(const SequenceParams& params, int layer,
                                     const Eigen::VectorXd& x, const CellState& prev);
CellState lstm_cell_step(const SequenceParams& params, int layer, const Eigen::VectorXd& x,
                         const CellState& prev);

/// Runs one LSTM layer over a window (rows = time steps) from zero initial
/// state, returning the state after every step.
std::vector<CellState> lstm_layer_run(const SequenceParams& params, int layer,
                                      const Eigen::MatrixXd& inputs);

/// Full forward over a window (rows = time steps, columns = features):
/// iterates the stacked cells from zero states and applies the output layer
/// to the top layer's final hidden vector.
double lstm_forward(const SequenceParams& params, const Eigen::MatrixXd& window);

/// Windowed training data: step matrices are time-major (steps[t] is
/// batch x features, oldest step first) and each target is aligned with its
/// window's final step, so no window row looks past its target.
struct SequenceBatch {
    std::vector<Eigen::MatrixXd> steps;
    Eigen::VectorXd targets;

    int window_len() const { return static_cast<int>(steps.size()); }
    int size() const { return steps.empty() ? 0 : static_cast<int>(steps.front().rows()); }
    int input_dim() const { return steps.empty() ? 0 : static_cast<int>(steps.front().cols()); }

    SequenceBatch select(const std::vector<int>& rows) const;
};

/// Reshapes a lag-embedded design matrix (predictor-major, lag-ascending
/// columns) into windows of length k (+1 with lag 0), oldest step first.
SequenceBatch make_sequence_batch(const Eigen::MatrixXd& lagged_matrix,
                                  const Eigen::VectorXd& targets, int n_predictors, int k,
                                  bool include_lag0);

/// Exact loss gradient through all window steps by reverse accumulation.
/// Loss is the data term on the window-end predictions plus
/// lambda * sum of squared weights (biases excluded). Optional per-layer
/// dropout masks (batch x units, entries 0 or 1/(1-rate)) are applied to
/// hidden outputs, held fixed across time steps.
struct SeqBackpropResult {
    Eigen::VectorXd grad;
    double data_loss = 0.0;
};
SeqBackpropResult bptt(const SequenceParams& params, const SequenceBatch& batch,
                       nnet::LossKind kind, double lambda,
                       const std::vector<Eigen::MatrixXd>* dropout_masks = nullptr);

/// Window-end predictions for a whole batch.
Eigen::VectorXd predict(const SequenceParams& params, const SequenceBatch& batch);

/// Same contract as nnet::train: Adam mini-batches, early stopping with
/// patience on the validation loss, restore-best-epoch parameters.
/// Gradients are clipped at global norm 5.
struct TrainResult {
    SequenceParams params;
    TrainTrace trace;
};
TrainResult train_rnn(const SequenceSpec& spec, const TrainConfig& config,
                      const SequenceBatch& train, const SequenceBatch& val,
                      nnet::LossKind kind = nnet::LossKind::mse,
                      const std::function<void(int, const SequenceParams&)>& epoch_callback = {});

inline constexpr double kGradClipNorm = 5.0;

}  // namespace gwts::rnn
