// Copyright 2026 The QSE Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qse/mlp.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qse/errors.hpp"

namespace qse {
namespace {

// splitmix64; the init stream must not depend on the standard library's
// distribution implementations.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

void apply_activation(Activation act, Eigen::MatrixXd &z) {
    if (act == Activation::relu) {
        z = z.cwiseMax(0.0);
    } else {
        z = z.array().tanh().matrix();
    }
}

// Derivative expressed through the activation output a = act(z).
Eigen::MatrixXd activation_derivative(Activation act, const Eigen::MatrixXd &a) {
    if (act == Activation::relu) {
        return (a.array() > 0.0).cast<double>().matrix();
    }
    return (1.0 - a.array().square()).matrix();
}

void check_input_rows(const MlpParams &params, Eigen::Index rows) {
    if (static_cast<std::size_t>(rows) != params.spec.input_size) {
        std::ostringstream msg;
        msg << "network expects " << params.spec.input_size << " inputs, got " << rows;
        throw ShapeMismatch(msg.str());
    }
}

}  // namespace

std::string_view activation_name(Activation a) {
    return a == Activation::relu ? "relu" : "tanh";
}

Activation parse_activation(std::string_view name) {
    if (name == "relu") {
        return Activation::relu;
    }
    if (name == "tanh") {
        return Activation::tanh;
    }
    throw ConfigError("mlp.activation: expected relu or tanh, got '" + std::string(name) + "'");
}

void MlpSpec::validate() const {
    for (std::size_t w : widths()) {
        if (w < 1) {
            throw ConfigError("mlp: every layer width must be at least 1");
        }
    }
}

std::vector<std::size_t> MlpSpec::widths() const {
    std::vector<std::size_t> w{input_size};
    w.insert(w.end(), hidden.begin(), hidden.end());
    w.push_back(output_size);
    return w;
}

MlpParams MlpParams::zeros(const MlpSpec &spec) {
    spec.validate();
    MlpParams p{spec, {}};
    const auto w = spec.widths();
    for (std::size_t i = 1; i < w.size(); ++i) {
        const auto out = static_cast<Eigen::Index>(w[i]);
        const auto in = static_cast<Eigen::Index>(w[i - 1]);
        p.layers.push_back(DenseLayer{Eigen::MatrixXd::Zero(out, in), Eigen::VectorXd::Zero(out)});
    }
    return p;
}

MlpParams MlpParams::initialize(const MlpSpec &spec) {
    MlpParams p = zeros(spec);
    SplitMix64 rng{spec.init_seed};
    for (DenseLayer &layer : p.layers) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weights.cols()));
        // Row-major fill order so the stream does not depend on Eigen's storage order.
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
                layer.weights(r, c) = rng.uniform(-bound, bound);
            }
        }
        for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
            layer.bias(r) = rng.uniform(-bound, bound);
        }
    }
    return p;
}

std::size_t MlpParams::parameter_count() const {
    std::size_t n = 0;
    for (const DenseLayer &l : layers) {
        n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
    }
    return n;
}

std::vector<double> MlpParams::flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const DenseLayer &l : layers) {
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
                flat.push_back(l.weights(r, c));
            }
        }
        for (Eigen::Index r = 0; r < l.bias.size(); ++r) {
            flat.push_back(l.bias(r));
        }
    }
    return flat;
}

void MlpParams::assign(std::span<const double> flat) {
    if (flat.size() != parameter_count()) {
        throw ShapeMismatch("assign: flat parameter vector has the wrong length");
    }
    std::size_t pos = 0;
    for (DenseLayer &l : layers) {
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
                l.weights(r, c) = flat[pos++];
            }
        }
        for (Eigen::Index r = 0; r < l.bias.size(); ++r) {
            l.bias(r) = flat[pos++];
        }
    }
}

Eigen::MatrixXd forward_batch(const MlpParams &params, const Eigen::MatrixXd &inputs) {
    check_input_rows(params, inputs.rows());
    Eigen::MatrixXd a = inputs;
    for (std::size_t i = 0; i < params.layers.size(); ++i) {
        const DenseLayer &l = params.layers[i];
        Eigen::MatrixXd z = l.weights * a;
        z.colwise() += l.bias;
        if (i + 1 < params.layers.size()) {
            apply_activation(params.spec.activation, z);
        }
        a = std::move(z);
    }
    return a;
}

std::vector<double> forward(const MlpParams &params, std::span<const double> state) {
    check_input_rows(params, static_cast<Eigen::Index>(state.size()));
    const Eigen::Map<const Eigen::VectorXd> x(state.data(), static_cast<Eigen::Index>(state.size()));
    const Eigen::MatrixXd q = forward_batch(params, x);
    return std::vector<double>(q.data(), q.data() + q.size());
}

double loss_and_gradients(const MlpParams &params, const Eigen::MatrixXd &inputs,
                          std::span<const ActionTarget> targets, std::vector<DenseLayer> *grads) {
    check_input_rows(params, inputs.rows());
    if (targets.empty()) {
        throw std::invalid_argument("loss_and_gradients: empty batch");
    }
    if (static_cast<std::size_t>(inputs.cols()) != targets.size()) {
        throw ShapeMismatch("loss_and_gradients: one target per input column required");
    }
    const std::size_t n_layers = params.layers.size();
    const auto batch = static_cast<double>(targets.size());

    // activations[0] is the input; activations[i] the output of layer i.
    std::vector<Eigen::MatrixXd> activations;
    activations.reserve(n_layers + 1);
    activations.push_back(inputs);
    for (std::size_t i = 0; i < n_layers; ++i) {
        const DenseLayer &l = params.layers[i];
        Eigen::MatrixXd z = l.weights * activations.back();
        z.colwise() += l.bias;
        if (i + 1 < n_layers) {
            apply_activation(params.spec.activation, z);
        }
        activations.push_back(std::move(z));
    }

    const Eigen::MatrixXd &q = activations.back();
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), q.cols());
    double loss = 0.0;
    for (std::size_t s = 0; s < targets.size(); ++s) {
        const auto a = static_cast<Eigen::Index>(targets[s].action);
        if (a < 0 || a >= q.rows()) {
            throw ShapeMismatch("loss_and_gradients: target action out of range");
        }
        const double err = q(a, static_cast<Eigen::Index>(s)) - targets[s].value;
        loss += err * err;
        delta(a, static_cast<Eigen::Index>(s)) = 2.0 * err / batch;
    }
    loss /= batch;

    if (grads == nullptr) {
        return loss;
    }
    grads->resize(n_layers);
    for (std::size_t i = n_layers; i-- > 0;) {
        const DenseLayer &l = params.layers[i];
        (*grads)[i].weights = delta * activations[i].transpose();
        (*grads)[i].bias = delta.rowwise().sum();
        if (i > 0) {
            Eigen::MatrixXd back = l.weights.transpose() * delta;
            delta = back.cwiseProduct(activation_derivative(params.spec.activation, activations[i]));
        }
    }
    return loss;
}

AdamState::AdamState(const MlpParams &params, AdamConfig cfg) : cfg_(cfg) {
    for (const DenseLayer &l : params.layers) {
        DenseLayer zero{Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()),
                        Eigen::VectorXd::Zero(l.bias.size())};
        m_.push_back(zero);
        v_.push_back(std::move(zero));
    }
}

void AdamState::apply(MlpParams &params, const std::vector<DenseLayer> &grads) {
    if (grads.size() != params.layers.size() || m_.size() != params.layers.size()) {
        throw ShapeMismatch("AdamState: optimizer state does not match the network");
    }
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    const double lr = cfg_.learning_rate;
    const double b1 = cfg_.beta1;
    const double b2 = cfg_.beta2;
    const double eps = cfg_.epsilon;
    auto update = [&](auto &param, const auto &g, auto &m, auto &v) {
        m = b1 * m + (1.0 - b1) * g;
        v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
        param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
    };
    for (std::size_t i = 0; i < params.layers.size(); ++i) {
        update(params.layers[i].weights, grads[i].weights, m_[i].weights, v_[i].weights);
        update(params.layers[i].bias, grads[i].bias, m_[i].bias, v_[i].bias);
    }
}

double train_batch(MlpParams &params, const Eigen::MatrixXd &inputs,
                   std::span<const ActionTarget> targets, AdamState &optimizer) {
    for (const ActionTarget &t : targets) {
        if (!std::isfinite(t.value)) {
            throw NonFiniteLoss("train_batch: non-finite target value");
        }
    }
    std::vector<DenseLayer> grads;
    const double loss = loss_and_gradients(params, inputs, targets, &grads);
    if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "train_batch: loss is " << loss << " (training diverged)";
        throw NonFiniteLoss(msg.str());
    }
    optimizer.apply(params, grads);
    return loss;
}

void soft_update(MlpParams &target, const MlpParams &main, double mix) {
    if (target.layers.size() != main.layers.size()) {
        throw ShapeMismatch("soft_update: networks have different depth");
    }
    for (std::size_t i = 0; i < target.layers.size(); ++i) {
        DenseLayer &t = target.layers[i];
        const DenseLayer &m = main.layers[i];
        if (t.weights.rows() != m.weights.rows() || t.weights.cols() != m.weights.cols()) {
            throw ShapeMismatch("soft_update: layer shapes differ");
        }
        t.weights = (1.0 - mix) * t.weights + mix * m.weights;
        t.bias = (1.0 - mix) * t.bias + mix * m.bias;
    }
}

namespace {

nlohmann::json spec_to_json(const MlpSpec &spec) {
    return {{"input_size", spec.input_size},
            {"hidden", spec.hidden},
            {"output_size", spec.output_size},
            {"activation", std::string(activation_name(spec.activation))},
            {"init_seed", spec.init_seed}};
}

MlpSpec spec_from_json(const nlohmann::json &j) {
    MlpSpec spec;
    spec.input_size = j.at("input_size").get<std::size_t>();
    spec.hidden = j.at("hidden").get<std::vector<std::size_t>>();
    spec.output_size = j.at("output_size").get<std::size_t>();
    spec.activation = parse_activation(j.at("activation").get<std::string>());
    spec.init_seed = j.at("init_seed").get<std::uint64_t>();
    return spec;
}

bool same_shape(const MlpSpec &a, const MlpSpec &b) {
    return a.input_size == b.input_size && a.hidden == b.hidden &&
           a.output_size == b.output_size && a.activation == b.activation;
}

}  // namespace

void save_params(const MlpParams &params, std::uint64_t training_step,
                 const std::filesystem::path &path) {
    nlohmann::json layers = nlohmann::json::array();
    for (const DenseLayer &l : params.layers) {
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(l.weights.size()));
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
                w.push_back(l.weights(r, c));
            }
        }
        layers.push_back({{"rows", l.weights.rows()},
                          {"cols", l.weights.cols()},
                          {"weights", w},
                          {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
    }
    const nlohmann::json doc = {{"format", "qse-mlp-checkpoint"},
                                {"version", kCheckpointVersion},
                                {"training_step", training_step},
                                {"spec", spec_to_json(params.spec)},
                                {"layers", layers}};
    std::ofstream out(path);
    if (!out) {
        throw IoError("save_params: cannot open " + path.string() + " for writing");
    }
    out << doc.dump() << '\n';
    if (!out) {
        throw IoError("save_params: write to " + path.string() + " failed");
    }
}

Checkpoint load_params(const std::filesystem::path &path, const MlpSpec *expected) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("load_params: cannot open " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaMismatch("load_params: " + path.string() + " is not valid JSON: " + e.what());
    }
    try {
        if (doc.at("format") != "qse-mlp-checkpoint") {
            throw SchemaMismatch("load_params: not a checkpoint file");
        }
        if (doc.at("version").get<int>() != kCheckpointVersion) {
            throw SchemaMismatch("load_params: unsupported checkpoint version");
        }
        const MlpSpec spec = spec_from_json(doc.at("spec"));
        if (expected != nullptr && !same_shape(spec, *expected)) {
            std::ostringstream msg;
            msg << "load_params: checkpoint network (" << spec.input_size << " inputs, "
                << spec.hidden.size() << " hidden layers, " << spec.output_size
                << " outputs) does not match the configured network (" << expected->input_size
                << " inputs, " << expected->hidden.size() << " hidden layers, "
                << expected->output_size << " outputs)";
            throw SchemaMismatch(msg.str());
        }
        Checkpoint cp{MlpParams::zeros(spec), doc.at("training_step").get<std::uint64_t>()};
        const auto &layers = doc.at("layers");
        if (layers.size() != cp.params.layers.size()) {
            throw SchemaMismatch("load_params: layer count does not match the spec");
        }
        for (std::size_t i = 0; i < layers.size(); ++i) {
            DenseLayer &l = cp.params.layers[i];
            const auto w = layers[i].at("weights").get<std::vector<double>>();
            const auto b = layers[i].at("bias").get<std::vector<double>>();
            if (layers[i].at("rows").get<Eigen::Index>() != l.weights.rows() ||
                layers[i].at("cols").get<Eigen::Index>() != l.weights.cols() ||
                w.size() != static_cast<std::size_t>(l.weights.size()) ||
                b.size() != static_cast<std::size_t>(l.bias.size())) {
                throw SchemaMismatch("load_params: layer shape does not match the spec");
            }
            std::size_t pos = 0;
            for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
                for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
                    l.weights(r, c) = w[pos++];
                }
            }
            for (Eigen::Index r = 0; r < l.bias.size(); ++r) {
                l.bias(r) = b[static_cast<std::size_t>(r)];
            }
        }
        return cp;
    } catch (const nlohmann::json::exception &e) {
        throw SchemaMismatch("load_params: malformed checkpoint: " + std::string(e.what()));
    } catch (const ConfigError &e) {
        throw SchemaMismatch(std::string("load_params: ") + e.what());
    }
}

}  // namespace qse
