#include "gwts/recurrent.hpp"

#include <cmath>

#include "gwts/series.hpp"

namespace gwts::rnn {

using nnet::Activation;
using nnet::LossKind;

CellKind cell_kind_from_string(const std::string& name) {
    if (name == "jordan") return CellKind::jordan;
    if (name == "elman") return CellKind::elman;
    if (name == "lstm") return CellKind::lstm;
    throw InputError("unknown cell kind '" + name + "'");
}

std::string to_string(CellKind k) {
    switch (k) {
        case CellKind::jordan: return "jordan";
        case CellKind::elman: return "elman";
        case CellKind::lstm: return "lstm";
    }
    return "lstm";
}

void check_spec(const SequenceSpec& spec) {
    if (spec.input_dim < 1) throw InputError("input dimension must be >= 1");
    if (spec.units < 1) throw InputError("unit count must be >= 1");
    if (spec.kind == CellKind::lstm) {
        if (spec.layers < 1 || spec.layers > 2) throw InputError("LSTM supports 1 or 2 layers");
    } else if (spec.layers != 1) {
        throw InputError("Jordan/Elman cells are single-layer");
    }
}

SequenceParams make_params(const SequenceSpec& spec) {
    check_spec(spec);
    SequenceParams p;
    p.spec = spec;
    const int m = spec.units;
    if (spec.kind == CellKind::lstm) {
        for (int l = 0; l < spec.layers; ++l) {
            const int fan_in = p.layer_input_dim(l);
            std::array<SequenceParams::GateIds, 4> layer_gates;
            for (auto& g : layer_gates) {
                g.wx = p.layout.add(m, fan_in, true);
                g.wh = p.layout.add(m, m, true);
                g.bias = p.layout.add(m, 1, false);
            }
            p.gates.push_back(layer_gates);
        }
    } else {
        p.rnn_alpha1 = p.layout.add(m, spec.input_dim, true);
        p.rnn_alpha2 = p.layout.add(m, spec.kind == CellKind::jordan ? 1 : m, true);
        p.rnn_alpha0 = p.layout.add(m, 1, false);
    }
    p.out_w = p.layout.add(1, m, true);
    p.out_b = p.layout.add(1, 1, false);
    p.values = Eigen::VectorXd::Zero(p.layout.total_size());
    return p;
}

SequenceParams init_params(const SequenceSpec& spec, std::uint64_t seed) {
    SequenceParams p = make_params(spec);
    Rng rng(seed);
    p.layout.init_uniform(p.values, rng);
    if (spec.kind == CellKind::lstm) {
        for (const auto& layer : p.gates) p.vec(layer[1].bias).setOnes();  // forget gate
    }
    return p;
}

namespace {

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& v) {
    return (1.0 / (1.0 + (-v.array()).exp())).matrix();
}

double output_layer(const SequenceParams& p, const Eigen::VectorXd& h) {
    const double pre = p.mat(p.out_w).row(0).dot(h) + p.vec(p.out_b)(0);
    return nnet::activate(p.spec.output_activation, pre);
}

}  // namespace

RnnStepResult jordan_step(const SequenceParams& p, const Eigen::VectorXd& x, double yhat_prev) {
    if (p.spec.kind != CellKind::jordan) throw InputError("parameters are not a Jordan cell");
    if (x.size() != p.spec.input_dim) throw InputError("input dimension mismatch");
    RnnStepResult r;
    Eigen::VectorXd pre = p.mat(p.rnn_alpha1) * x + p.vec(p.rnn_alpha0);
    pre += p.mat(p.rnn_alpha2).col(0) * yhat_prev;
    r.h = activate(p.spec.hidden_activation, Eigen::MatrixXd(pre)).col(0);
    r.yhat = output_layer(p, r.h);
    return r;
}

RnnStepResult elman_step(const SequenceParams& p, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& h_prev) {
    if (p.spec.kind != CellKind::elman) throw InputError("parameters are not an Elman cell");
    if (x.size() != p.spec.input_dim || h_prev.size() != p.spec.units) {
        throw InputError("input dimension mismatch");
    }
    RnnStepResult r;
    Eigen::VectorXd pre = p.mat(p.rnn_alpha1) * x + p.mat(p.rnn_alpha2) * h_prev + p.vec(p.rnn_alpha0);
    r.h = activate(p.spec.hidden_activation, Eigen::MatrixXd(pre)).col(0);
    r.yhat = output_layer(p, r.h);
    return r;
}

LstmStepDetail lstm_cell_step_detail(const SequenceParams& p, int layer, const Eigen::VectorXd& x,
                                     const CellState& prev) {
    if (p.spec.kind != CellKind::lstm) throw InputError("parameters are not an LSTM");
    if (layer < 0 || layer >= p.spec.layers) throw InputError("layer index out of range");
    if (x.size() != p.layer_input_dim(layer)) throw InputError("input dimension mismatch");
    if (prev.h.size() != p.spec.units || prev.s.size() != p.spec.units) {
        throw InputError("state dimension mismatch");
    }
    if (!prev.h.allFinite() || !prev.s.allFinite()) throw InputError("non-finite previous state");

    const auto& g = p.gates[static_cast<std::size_t>(layer)];
    const auto affine = [&](const SequenceParams::GateIds& ids) -> Eigen::VectorXd {
        return p.mat(ids.wx) * x + p.mat(ids.wh) * prev.h + p.vec(ids.bias);
    };
    LstmStepDetail d;
    d.input_gate = sigmoid(affine(g[0]));
    d.forget_gate = sigmoid(affine(g[1]));
    d.output_gate = sigmoid(affine(g[2]));
    d.candidate = affine(g[3]).array().tanh();
    d.state.s = d.forget_gate.array() * prev.s.array() + d.input_gate.array() * d.candidate.array();
    d.state.h = d.state.s.array().tanh() * d.output_gate.array();
    return d;
}

CellState lstm_cell_step(const SequenceParams& p, int layer, const Eigen::VectorXd& x,
                         const CellState& prev) {
    return lstm_cell_step_detail(p, layer, x, prev).state;
}

std::vector<CellState> lstm_layer_run(const SequenceParams& p, int layer,
                                      const Eigen::MatrixXd& inputs) {
    CellState state{Eigen::VectorXd::Zero(p.spec.units), Eigen::VectorXd::Zero(p.spec.units)};
    std::vector<CellState> out;
    out.reserve(static_cast<std::size_t>(inputs.rows()));
    for (Eigen::Index t = 0; t < inputs.rows(); ++t) {
        state = lstm_cell_step(p, layer, inputs.row(t).transpose(), state);
        out.push_back(state);
    }
    return out;
}

double lstm_forward(const SequenceParams& p, const Eigen::MatrixXd& window) {
    if (p.spec.kind != CellKind::lstm) throw InputError("parameters are not an LSTM");
    if (window.rows() == 0) throw InputError("empty window");
    Eigen::MatrixXd inputs = window;
    std::vector<CellState> states;
    for (int l = 0; l < p.spec.layers; ++l) {
        states = lstm_layer_run(p, l, inputs);
        inputs.resize(window.rows(), p.spec.units);
        for (std::size_t t = 0; t < states.size(); ++t) {
            inputs.row(static_cast<Eigen::Index>(t)) = states[t].h.transpose();
        }
    }
    return output_layer(p, states.back().h);
}

SequenceBatch SequenceBatch::select(const std::vector<int>& rows) const {
    SequenceBatch out;
    out.targets.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) out.targets(static_cast<Eigen::Index>(i)) = targets(rows[i]);
    out.steps.reserve(steps.size());
    for (const auto& step : steps) {
        Eigen::MatrixXd m(rows.size(), step.cols());
        for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = step.row(rows[i]);
        out.steps.push_back(std::move(m));
    }
    return out;
}

SequenceBatch make_sequence_batch(const Eigen::MatrixXd& lagged_matrix,
                                  const Eigen::VectorXd& targets, int n_predictors, int k,
                                  bool include_lag0) {
    const int lags_per_pred = include_lag0 ? k + 1 : k;
    if (n_predictors < 1 || lags_per_pred < 1) throw InputError("invalid window shape");
    if (lagged_matrix.cols() != static_cast<Eigen::Index>(n_predictors) * lags_per_pred) {
        throw InputError("lagged matrix width does not match predictors x lags");
    }
    if (lagged_matrix.rows() != targets.size()) throw InputError("target/matrix row mismatch");

    SequenceBatch batch;
    batch.targets = targets;
    const int window = lags_per_pred;
    for (int s = 0; s < window; ++s) {
        const int lag = include_lag0 ? k - s : k - s;  // oldest step first
        Eigen::MatrixXd step(lagged_matrix.rows(), n_predictors);
        for (int j = 0; j < n_predictors; ++j) {
            const int col = include_lag0 ? j * lags_per_pred + lag : j * lags_per_pred + (lag - 1);
            step.col(j) = lagged_matrix.col(col);
        }
        batch.steps.push_back(std::move(step));
    }
    return batch;
}

namespace {

/// Per-layer forward caches for BPTT (time-major, batch rows).
struct LstmCache {
    std::vector<Eigen::MatrixXd> gate_i, gate_f, gate_o, cand, s, tanh_s, hm;
};

struct RnnCache {
    std::vector<Eigen::MatrixXd> h, hm;
    std::vector<Eigen::VectorXd> yhat;  // Jordan feedback chain
};

const Eigen::MatrixXd* mask_for(const std::vector<Eigen::MatrixXd>* masks, int layer) {
    if (!masks || masks->empty()) return nullptr;
    return &(*masks)[static_cast<std::size_t>(layer)];
}

struct ForwardOutput {
    Eigen::VectorXd yhat;            // window-end predictions
    std::vector<LstmCache> lstm;     // per layer
    RnnCache rnn;
    std::vector<std::vector<const Eigen::MatrixXd*>> layer_inputs;  // [layer][t]
};

ForwardOutput batched_forward(const SequenceParams& p, const SequenceBatch& batch,
                              const std::vector<Eigen::MatrixXd>* masks) {
    const int t_len = batch.window_len();
    const int b = batch.size();
    const int m = p.spec.units;
    if (t_len == 0 || b == 0) throw InputError("empty sequence batch");
    if (batch.input_dim() != p.spec.input_dim) throw InputError("input dimension mismatch");

    ForwardOutput out;
    if (p.spec.kind == CellKind::lstm) {
        out.lstm.resize(static_cast<std::size_t>(p.spec.layers));
        out.layer_inputs.resize(static_cast<std::size_t>(p.spec.layers));
        for (int l = 0; l < p.spec.layers; ++l) {
            auto& cache = out.lstm[static_cast<std::size_t>(l)];
            const auto& g = p.gates[static_cast<std::size_t>(l)];
            const Eigen::MatrixXd* mask = mask_for(masks, l);
            Eigen::MatrixXd hm_prev = Eigen::MatrixXd::Zero(b, m);
            Eigen::MatrixXd s_prev = Eigen::MatrixXd::Zero(b, m);
            for (int t = 0; t < t_len; ++t) {
                const Eigen::MatrixXd& input =
                    l == 0 ? batch.steps[static_cast<std::size_t>(t)]
                           : out.lstm[static_cast<std::size_t>(l - 1)].hm[static_cast<std::size_t>(t)];
                out.layer_inputs[static_cast<std::size_t>(l)].push_back(&input);
                const auto pre = [&](const SequenceParams::GateIds& ids) {
                    Eigen::MatrixXd v = input * p.mat(ids.wx).transpose();
                    v.noalias() += hm_prev * p.mat(ids.wh).transpose();
                    v.rowwise() += p.vec(ids.bias).transpose();
                    return v;
                };
                Eigen::MatrixXd gi = sigmoid(pre(g[0]));
                Eigen::MatrixXd gf = sigmoid(pre(g[1]));
                Eigen::MatrixXd go = sigmoid(pre(g[2]));
                Eigen::MatrixXd gc = pre(g[3]).array().tanh();
                Eigen::MatrixXd s = (gf.array() * s_prev.array() + gi.array() * gc.array()).matrix();
                Eigen::MatrixXd ts = s.array().tanh().matrix();
                Eigen::MatrixXd h = (ts.array() * go.array()).matrix();
                if (mask) h.array() *= mask->array();
                cache.gate_i.push_back(std::move(gi));
                cache.gate_f.push_back(std::move(gf));
                cache.gate_o.push_back(std::move(go));
                cache.cand.push_back(std::move(gc));
                cache.s.push_back(s);
                cache.tanh_s.push_back(std::move(ts));
                cache.hm.push_back(std::move(h));
                hm_prev = cache.hm.back();
                s_prev = std::move(s);
            }
        }
        const Eigen::MatrixXd& h_top = out.lstm.back().hm.back();
        Eigen::VectorXd ypre = h_top * p.mat(p.out_w).row(0).transpose();
        ypre.array() += p.vec(p.out_b)(0);
        out.yhat = activate(p.spec.output_activation, Eigen::MatrixXd(ypre)).col(0);
        return out;
    }

    // Jordan / Elman single layer.
    const Eigen::MatrixXd* mask = mask_for(masks, 0);
    Eigen::VectorXd yprev = Eigen::VectorXd::Zero(b);
    Eigen::MatrixXd hm_prev = Eigen::MatrixXd::Zero(b, m);
    for (int t = 0; t < t_len; ++t) {
        const Eigen::MatrixXd& input = batch.steps[static_cast<std::size_t>(t)];
        Eigen::MatrixXd preh = input * p.mat(p.rnn_alpha1).transpose();
        if (p.spec.kind == CellKind::jordan) {
            preh.noalias() += yprev * p.mat(p.rnn_alpha2).col(0).transpose();
        } else {
            preh.noalias() += hm_prev * p.mat(p.rnn_alpha2).transpose();
        }
        preh.rowwise() += p.vec(p.rnn_alpha0).transpose();
        Eigen::MatrixXd h = activate(p.spec.hidden_activation, preh);
        Eigen::MatrixXd hm = mask ? Eigen::MatrixXd((h.array() * mask->array()).matrix()) : h;
        Eigen::VectorXd ypre = hm * p.mat(p.out_w).row(0).transpose();
        ypre.array() += p.vec(p.out_b)(0);
        Eigen::VectorXd yhat = activate(p.spec.output_activation, Eigen::MatrixXd(ypre)).col(0);
        out.rnn.h.push_back(std::move(h));
        out.rnn.hm.push_back(std::move(hm));
        out.rnn.yhat.push_back(yhat);
        yprev = std::move(yhat);
        hm_prev = out.rnn.hm.back();
    }
    out.yhat = out.rnn.yhat.back();
    return out;
}

}  // namespace

Eigen::VectorXd predict(const SequenceParams& params, const SequenceBatch& batch) {
    return batched_forward(params, batch, nullptr).yhat;
}

SeqBackpropResult bptt(const SequenceParams& p, const SequenceBatch& batch, LossKind kind,
                       double lambda, const std::vector<Eigen::MatrixXd>* masks) {
    if (batch.size() == 0) throw InputError("empty sequence batch");
    const int t_len = batch.window_len();
    const int b = batch.size();
    const double bn = static_cast<double>(b);

    ForwardOutput fwd = batched_forward(p, batch, masks);

    SeqBackpropResult res;
    res.grad = Eigen::VectorXd::Zero(p.values.size());
    const auto gmat = [&](int id) { return p.layout.mat(res.grad, id); };
    const auto gvec = [&](int id) { return p.layout.vec(res.grad, id); };

    Eigen::VectorXd err = fwd.yhat - batch.targets;
    Eigen::VectorXd dyhat(b);
    if (kind == LossKind::mse) {
        res.data_loss = err.squaredNorm() / bn;
        dyhat = (2.0 / bn) * err;
    } else {
        res.data_loss = err.array().abs().sum() / bn;
        dyhat = err.array().sign() / bn;
    }

    if (p.spec.kind == CellKind::lstm) {
        const Eigen::MatrixXd yg =
            activate_grad_from_output(p.spec.output_activation, Eigen::MatrixXd(fwd.yhat));
        const Eigen::VectorXd dypre = dyhat.array() * yg.col(0).array();
        gvec(p.out_b)(0) += dypre.sum();
        gmat(p.out_w).row(0) += dypre.transpose() * fwd.lstm.back().hm.back();

        // dHm flowing into each layer from above (output layer or upper gates).
        std::vector<std::vector<Eigen::MatrixXd>> dhm_in(
            static_cast<std::size_t>(p.spec.layers),
            std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(t_len)));
        for (int l = 0; l < p.spec.layers; ++l) {
            for (int t = 0; t < t_len; ++t) {
                dhm_in[static_cast<std::size_t>(l)][static_cast<std::size_t>(t)] =
                    Eigen::MatrixXd::Zero(b, p.spec.units);
            }
        }
        dhm_in.back().back() = dypre * p.mat(p.out_w).row(0);

        for (int l = p.spec.layers - 1; l >= 0; --l) {
            const auto& cache = fwd.lstm[static_cast<std::size_t>(l)];
            const auto& g = p.gates[static_cast<std::size_t>(l)];
            const Eigen::MatrixXd* mask = mask_for(masks, l);
            Eigen::MatrixXd ds_next = Eigen::MatrixXd::Zero(b, p.spec.units);
            Eigen::MatrixXd dhm_next = Eigen::MatrixXd::Zero(b, p.spec.units);
            for (int t = t_len - 1; t >= 0; --t) {
                const auto ts = static_cast<std::size_t>(t);
                Eigen::MatrixXd dhm = dhm_in[static_cast<std::size_t>(l)][ts] + dhm_next;
                Eigen::MatrixXd dh = mask ? Eigen::MatrixXd((dhm.array() * mask->array()).matrix())
                                          : std::move(dhm);
                const Eigen::MatrixXd& tanh_s = cache.tanh_s[ts];
                Eigen::MatrixXd d_o = (dh.array() * tanh_s.array()).matrix();
                Eigen::MatrixXd ds =
                    ds_next +
                    (dh.array() * cache.gate_o[ts].array() * (1.0 - tanh_s.array().square())).matrix();
                const Eigen::MatrixXd& s_prev =
                    t > 0 ? cache.s[ts - 1] : Eigen::MatrixXd::Zero(b, p.spec.units).eval();
                Eigen::MatrixXd d_f = (ds.array() * s_prev.array()).matrix();
                Eigen::MatrixXd d_i = (ds.array() * cache.cand[ts].array()).matrix();
                Eigen::MatrixXd d_c = (ds.array() * cache.gate_i[ts].array()).matrix();
                ds_next = (ds.array() * cache.gate_f[ts].array()).matrix();

                const auto dpre_sig = [](const Eigen::MatrixXd& dg, const Eigen::MatrixXd& gate) {
                    return Eigen::MatrixXd((dg.array() * gate.array() * (1.0 - gate.array())).matrix());
                };
                std::array<Eigen::MatrixXd, 4> dpre = {
                    dpre_sig(d_i, cache.gate_i[ts]), dpre_sig(d_f, cache.gate_f[ts]),
                    dpre_sig(d_o, cache.gate_o[ts]),
                    Eigen::MatrixXd((d_c.array() * (1.0 - cache.cand[ts].array().square())).matrix())};

                const Eigen::MatrixXd& input = *fwd.layer_inputs[static_cast<std::size_t>(l)][ts];
                const Eigen::MatrixXd* hm_prev = t > 0 ? &cache.hm[ts - 1] : nullptr;
                dhm_next.setZero();
                Eigen::MatrixXd dinput = Eigen::MatrixXd::Zero(b, p.layer_input_dim(l));
                for (int gi = 0; gi < 4; ++gi) {
                    const auto& ids = g[static_cast<std::size_t>(gi)];
                    const auto& dp = dpre[static_cast<std::size_t>(gi)];
                    gmat(ids.wx).noalias() += dp.transpose() * input;
                    if (hm_prev) {
                        gmat(ids.wh).noalias() += dp.transpose() * (*hm_prev);
                        dhm_next.noalias() += dp * p.mat(ids.wh);
                    }
                    gvec(ids.bias) += dp.colwise().sum().transpose();
                    dinput.noalias() += dp * p.mat(ids.wx);
                }
                if (l > 0) dhm_in[static_cast<std::size_t>(l - 1)][ts] += dinput;
            }
        }
    } else {
        // Jordan / Elman.
        const Eigen::MatrixXd* mask = mask_for(masks, 0);
        const bool jordan = p.spec.kind == CellKind::jordan;
        Eigen::VectorXd dy = dyhat;                                    // grad wrt yhat_t
        Eigen::MatrixXd dhm_next = Eigen::MatrixXd::Zero(b, p.spec.units);  // Elman chain
        for (int t = t_len - 1; t >= 0; --t) {
            const auto ts = static_cast<std::size_t>(t);
            Eigen::MatrixXd dhm = dhm_next;
            if (jordan || t == t_len - 1) {
                const Eigen::MatrixXd yg = activate_grad_from_output(
                    p.spec.output_activation, Eigen::MatrixXd(fwd.rnn.yhat[ts]));
                const Eigen::VectorXd dypre = dy.array() * yg.col(0).array();
                gvec(p.out_b)(0) += dypre.sum();
                gmat(p.out_w).row(0) += dypre.transpose() * fwd.rnn.hm[ts];
                dhm.noalias() += dypre * p.mat(p.out_w).row(0);
            }
            Eigen::MatrixXd dh =
                mask ? Eigen::MatrixXd((dhm.array() * mask->array()).matrix()) : std::move(dhm);
            Eigen::MatrixXd dpre =
                (dh.array() *
                 activate_grad_from_output(p.spec.hidden_activation, fwd.rnn.h[ts]).array())
                    .matrix();

            gmat(p.rnn_alpha1).noalias() += dpre.transpose() * batch.steps[ts];
            gvec(p.rnn_alpha0) += dpre.colwise().sum().transpose();
            if (jordan) {
                const Eigen::VectorXd yprev =
                    t > 0 ? fwd.rnn.yhat[ts - 1] : Eigen::VectorXd::Zero(b).eval();
                gmat(p.rnn_alpha2).col(0) += dpre.transpose() * yprev;
                dy = dpre * p.mat(p.rnn_alpha2).col(0);  // to yhat_{t-1}
                dhm_next.setZero();
            } else {
                if (t > 0) {
                    gmat(p.rnn_alpha2).noalias() += dpre.transpose() * fwd.rnn.hm[ts - 1];
                    dhm_next = dpre * p.mat(p.rnn_alpha2);
                } else {
                    dhm_next.setZero();
                }
            }
        }
    }

    p.layout.add_decay_gradient(p.values, lambda, res.grad);
    return res;
}

TrainResult train_rnn(const SequenceSpec& spec, const TrainConfig& config,
                      const SequenceBatch& train, const SequenceBatch& val, LossKind kind,
                      const std::function<void(int, const SequenceParams&)>& epoch_callback) {
    check_train_config(config);
    if (train.size() == 0) throw InputError("training set is empty");
    if (val.size() == 0) throw InputError("validation set is empty (patience needs one)");
    if (train.input_dim() != spec.input_dim) throw InputError("spec/batch input dimension mismatch");

    TrainResult result{init_params(spec, config.seed), {}};
    SequenceParams& p = result.params;
    const int mask_layers = spec.kind == CellKind::lstm ? spec.layers : 1;

    detail::TrainProblem problem;
    problem.n_train = train.size();
    problem.params = &p.values;
    problem.clip_global_norm = kGradClipNorm;
    problem.batch_grad = [&](const std::vector<int>& batch_idx, Eigen::VectorXd& grad, Rng& rng) {
        const SequenceBatch piece = train.select(batch_idx);
        std::vector<Eigen::MatrixXd> masks;
        std::vector<Eigen::MatrixXd>* masks_ptr = nullptr;
        if (config.dropout_rate > 0.0) {
            const double scale = 1.0 / (1.0 - config.dropout_rate);
            for (int l = 0; l < mask_layers; ++l) {
                Eigen::MatrixXd m(piece.size(), spec.units);
                for (Eigen::Index i = 0; i < m.rows(); ++i) {
                    for (Eigen::Index j = 0; j < m.cols(); ++j) {
                        m(i, j) = rng.uniform01() < config.dropout_rate ? 0.0 : scale;
                    }
                }
                masks.push_back(std::move(m));
            }
            masks_ptr = &masks;
        }
        SeqBackpropResult bp = bptt(p, piece, kind, config.weight_decay, masks_ptr);
        grad = std::move(bp.grad);
        return bp.data_loss;
    };
    problem.val_loss = [&]() {
        const Eigen::VectorXd yhat = predict(p, val);
        return kind == LossKind::mse ? mse(val.targets, yhat) : mae(val.targets, yhat);
    };
    if (epoch_callback) {
        problem.on_epoch_end = [&](int epoch) { epoch_callback(epoch, p); };
    }

    result.trace = detail::run_training(problem, config);
    return result;
}

}  // namespace gwts::rnn
