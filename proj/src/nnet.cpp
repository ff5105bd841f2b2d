#include "gwts/nnet.hpp"

#include <cmath>

#include "gwts/series.hpp"

namespace gwts::nnet {

Activation activation_from_string(const std::string& name) {
    if (name == "linear") return Activation::linear;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "tanh") return Activation::tanh;
    if (name == "relu") return Activation::relu;
    throw InputError("unknown activation '" + name + "'");
}

std::string to_string(Activation a) {
    switch (a) {
        case Activation::linear: return "linear";
        case Activation::sigmoid: return "sigmoid";
        case Activation::tanh: return "tanh";
        case Activation::relu: return "relu";
    }
    return "linear";
}

double activate(Activation a, double v) {
    switch (a) {
        case Activation::linear: return v;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-v));
        case Activation::tanh: return std::tanh(v);
        case Activation::relu: return v > 0.0 ? v : 0.0;
    }
    return v;
}

Eigen::MatrixXd activate(Activation a, const Eigen::MatrixXd& v) {
    switch (a) {
        case Activation::linear: return v;
        case Activation::sigmoid: return (1.0 / (1.0 + (-v.array()).exp())).matrix();
        case Activation::tanh: return v.array().tanh().matrix();
        case Activation::relu: return v.cwiseMax(0.0);
    }
    return v;
}

Eigen::MatrixXd activate_grad_from_output(Activation a, const Eigen::MatrixXd& h) {
    switch (a) {
        case Activation::linear: return Eigen::MatrixXd::Ones(h.rows(), h.cols());
        case Activation::sigmoid: return (h.array() * (1.0 - h.array())).matrix();
        case Activation::tanh: return (1.0 - h.array().square()).matrix();
        case Activation::relu: return (h.array() > 0.0).cast<double>().matrix();
    }
    return Eigen::MatrixXd::Ones(h.rows(), h.cols());
}

int MlpSpec::parameter_count() const {
    int count = 0;
    int fan_in = input_dim;
    for (int m : hidden_sizes) {
        count += m * (fan_in + 1);
        fan_in = m;
    }
    count += fan_in + 1;  // output unit
    return count;
}

void check_spec(const MlpSpec& spec) {
    if (spec.input_dim < 1) throw InputError("input dimension must be >= 1");
    for (int m : spec.hidden_sizes) {
        if (m < 1) throw InputError("hidden layer sizes must be >= 1");
    }
}

MlpParams make_params(const MlpSpec& spec) {
    check_spec(spec);
    MlpParams p;
    p.spec = spec;
    int fan_in = spec.input_dim;
    for (int m : spec.hidden_sizes) {
        p.layout.add(m, fan_in, true);
        p.layout.add(m, 1, false);
        fan_in = m;
    }
    p.layout.add(1, fan_in, true);
    p.layout.add(1, 1, false);
    p.values = Eigen::VectorXd::Zero(p.layout.total_size());
    return p;
}

MlpParams init_params(const MlpSpec& spec, std::uint64_t seed) {
    MlpParams p = make_params(spec);
    Rng rng(seed);
    p.layout.init_uniform(p.values, rng);
    return p;
}

namespace {

/// Batched forward keeping every layer's activations (rows = samples).
struct BatchForward {
    std::vector<Eigen::MatrixXd> h;  // per hidden layer, then a B x 1 output column
    Eigen::VectorXd yhat;
};

BatchForward batch_forward(const MlpParams& p, const Eigen::MatrixXd& x,
                           const std::vector<Eigen::MatrixXd>* masks) {
    if (x.cols() != p.spec.input_dim) throw InputError("input dimension mismatch");
    BatchForward out;
    const int hidden_layers = static_cast<int>(p.spec.hidden_sizes.size());
    Eigen::MatrixXd cur = x;
    for (int l = 0; l < hidden_layers; ++l) {
        Eigen::MatrixXd pre = cur * p.weight(l).transpose();
        pre.rowwise() += p.bias(l).transpose();
        Eigen::MatrixXd h = activate(p.spec.hidden_activation, pre);
        if (masks) h.array() *= (*masks)[static_cast<std::size_t>(l)].array();
        out.h.push_back(h);
        cur = out.h.back();
    }
    Eigen::MatrixXd pre = cur * p.weight(hidden_layers).transpose();
    pre.rowwise() += p.bias(hidden_layers).transpose();
    out.h.push_back(activate(p.spec.output_activation, pre));
    out.yhat = out.h.back().col(0);
    return out;
}

}  // namespace

ForwardResult forward(const MlpParams& params, const Eigen::VectorXd& x) {
    const BatchForward bf = batch_forward(params, x.transpose(), nullptr);
    ForwardResult res;
    res.prediction = bf.yhat(0);
    for (std::size_t l = 0; l + 1 < bf.h.size(); ++l) res.hidden.push_back(bf.h[l].row(0));
    return res;
}

Eigen::VectorXd predict(const MlpParams& params, const Eigen::MatrixXd& x) {
    return batch_forward(params, x, nullptr).yhat;
}

double loss(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat, LossKind kind,
            const MlpParams& params, double lambda) {
    const double data = kind == LossKind::mse ? mse(y, yhat) : mae(y, yhat);
    return data + lambda * params.layout.weight_squared_norm(params.values);
}

BackpropResult backprop(const MlpParams& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        LossKind kind, double lambda,
                        const std::vector<Eigen::MatrixXd>* dropout_masks) {
    if (x.rows() == 0) throw InputError("backprop batch is empty");
    if (x.rows() != y.rows()) throw InputError("batch x/y row mismatch");
    const double b = static_cast<double>(x.rows());
    const int hidden_layers = static_cast<int>(params.spec.hidden_sizes.size());

    const BatchForward bf = batch_forward(params, x, dropout_masks);

    BackpropResult res;
    res.grad = Eigen::VectorXd::Zero(params.values.size());
    MlpParams grad_view;  // reuse the layout for shaped access into res.grad
    grad_view.spec = params.spec;
    grad_view.layout = params.layout;

    Eigen::VectorXd err = bf.yhat - y;
    Eigen::MatrixXd delta(x.rows(), 1);
    if (kind == LossKind::mse) {
        res.data_loss = err.squaredNorm() / b;
        delta.col(0) = (2.0 / b) * err;
    } else {
        res.data_loss = err.array().abs().sum() / b;
        delta.col(0) = err.array().sign() / b;
    }
    delta.array() *= activate_grad_from_output(params.spec.output_activation, bf.h.back()).array();

    for (int l = hidden_layers; l >= 0; --l) {
        const Eigen::MatrixXd& input = l == 0 ? x : bf.h[static_cast<std::size_t>(l - 1)];
        params.layout.mat(res.grad, 2 * l) = delta.transpose() * input;
        params.layout.vec(res.grad, 2 * l + 1) = delta.colwise().sum().transpose();
        if (l > 0) {
            Eigen::MatrixXd back = delta * params.weight(l);
            if (dropout_masks) back.array() *= (*dropout_masks)[static_cast<std::size_t>(l - 1)].array();
            back.array() *=
                activate_grad_from_output(params.spec.hidden_activation, bf.h[static_cast<std::size_t>(l - 1)])
                    .array();
            delta = std::move(back);
        }
    }
    params.layout.add_decay_gradient(params.values, lambda, res.grad);
    return res;
}

Eigen::MatrixXd apply_dropout(const Eigen::MatrixXd& h, double rate, std::uint64_t seed, Phase phase) {
    if (rate < 0.0 || rate > 0.5) throw InputError("dropout rate must lie in [0, 0.5]");
    if (phase == Phase::predict || rate == 0.0) return h;
    Rng rng(seed);
    const double scale = 1.0 / (1.0 - rate);
    Eigen::MatrixXd out = h;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) = rng.uniform01() < rate ? 0.0 : out(i, j) * scale;
        }
    }
    return out;
}

TrainResult train(const MlpSpec& spec, const TrainConfig& config, const Eigen::MatrixXd& x_train,
                  const Eigen::VectorXd& y_train, const Eigen::MatrixXd& x_val,
                  const Eigen::VectorXd& y_val, LossKind kind) {
    check_train_config(config);
    if (x_train.rows() == 0) throw InputError("training set is empty");
    if (x_val.rows() == 0) throw InputError("validation set is empty (patience needs one)");

    TrainResult result;
    result.params = init_params(spec, config.seed);
    MlpParams& p = result.params;
    const int hidden_layers = static_cast<int>(spec.hidden_sizes.size());

    detail::TrainProblem problem;
    problem.n_train = static_cast<int>(x_train.rows());
    problem.params = &p.values;
    problem.batch_grad = [&](const std::vector<int>& batch, Eigen::VectorXd& grad, Rng& rng) {
        Eigen::MatrixXd xb(batch.size(), x_train.cols());
        Eigen::VectorXd yb(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            xb.row(static_cast<Eigen::Index>(i)) = x_train.row(batch[i]);
            yb(static_cast<Eigen::Index>(i)) = y_train(batch[i]);
        }
        std::vector<Eigen::MatrixXd> masks;
        std::vector<Eigen::MatrixXd>* masks_ptr = nullptr;
        if (config.dropout_rate > 0.0) {
            const double scale = 1.0 / (1.0 - config.dropout_rate);
            for (int l = 0; l < hidden_layers; ++l) {
                Eigen::MatrixXd m(xb.rows(), spec.hidden_sizes[static_cast<std::size_t>(l)]);
                for (Eigen::Index i = 0; i < m.rows(); ++i) {
                    for (Eigen::Index j = 0; j < m.cols(); ++j) {
                        m(i, j) = rng.uniform01() < config.dropout_rate ? 0.0 : scale;
                    }
                }
                masks.push_back(std::move(m));
            }
            masks_ptr = &masks;
        }
        BackpropResult bp = backprop(p, xb, yb, kind, config.weight_decay, masks_ptr);
        grad = std::move(bp.grad);
        return bp.data_loss;
    };
    problem.val_loss = [&]() {
        const Eigen::VectorXd yhat = predict(p, x_val);
        return kind == LossKind::mse ? mse(y_val, yhat) : mae(y_val, yhat);
    };

    result.trace = detail::run_training(problem, config);
    return result;
}

}  // namespace gwts::nnet
