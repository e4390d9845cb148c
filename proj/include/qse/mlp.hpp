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

#pragma once

// Fully connected feed-forward network for action values q(s, ·), with
// hand-written backpropagation and an Adam optimizer.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qse {

enum class Activation { relu, tanh };

std::string_view activation_name(Activation a);
/// Throws ConfigError for anything but "relu" / "tanh".
Activation parse_activation(std::string_view name);

struct MlpSpec {
    std::size_t input_size = 70;
    std::vector<std::size_t> hidden{128, 128};
    std::size_t output_size = 7;
    Activation activation = Activation::relu;
    std::uint64_t init_seed = 0;

    /// Throws ConfigError.
    void validate() const;
    /// input, hidden..., output.
    std::vector<std::size_t> widths() const;

    bool operator==(const MlpSpec &) const = default;
};

/// Maps width_{i-1} -> width_i: weights is (out x in).
struct DenseLayer {
    Eigen::MatrixXd weights;
    Eigen::VectorXd bias;
};

struct MlpParams {
    MlpSpec spec;
    std::vector<DenseLayer> layers;

    /// Uniform fan-in initialization U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for
    /// weights and biases, drawn from spec.init_seed.
    static MlpParams initialize(const MlpSpec &spec);
    /// Same shapes as `spec`, every parameter zero.
    static MlpParams zeros(const MlpSpec &spec);

    std::size_t parameter_count() const;
    /// Flattened view helpers used by gradient checks and soft updates.
    std::vector<double> flatten() const;
    void assign(std::span<const double> flat);
};

/// Q-values for one state.
std::vector<double> forward(const MlpParams &params, std::span<const double> state);
/// Column-per-sample batch: inputs (input_size x batch) -> outputs (output_size x batch).
Eigen::MatrixXd forward_batch(const MlpParams &params, const Eigen::MatrixXd &inputs);

/// Regression target for a single action head.
struct ActionTarget {
    std::size_t action;
    double value;
};

/// Mean squared error over the selected heads and, if `grads` is non-null,
/// its gradient with respect to every parameter (same shapes as params.layers).
double loss_and_gradients(const MlpParams &params, const Eigen::MatrixXd &inputs,
                          std::span<const ActionTarget> targets, std::vector<DenseLayer> *grads);

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

class AdamState {
   public:
    AdamState() = default;
    AdamState(const MlpParams &params, AdamConfig cfg);

    const AdamConfig &config() const {
        return cfg_;
    }
    std::uint64_t steps() const {
        return t_;
    }
    void apply(MlpParams &params, const std::vector<DenseLayer> &grads);

   private:
    AdamConfig cfg_;
    std::vector<DenseLayer> m_;
    std::vector<DenseLayer> v_;
    std::uint64_t t_ = 0;
};

/// One Adam step on the batch MSE. Returns the loss before the update.
/// Throws NonFiniteLoss, ShapeMismatch, or std::invalid_argument for an empty batch.
double train_batch(MlpParams &params, const Eigen::MatrixXd &inputs,
                   std::span<const ActionTarget> targets, AdamState &optimizer);

/// target <- (1 - mix) * target + mix * main.
void soft_update(MlpParams &target, const MlpParams &main, double mix);

struct Checkpoint {
    MlpParams params;
    std::uint64_t training_step = 0;
};

inline constexpr int kCheckpointVersion = 1;

/// JSON checkpoint; see docs/formats.md. Doubles round-trip exactly.
void save_params(const MlpParams &params, std::uint64_t training_step,
                 const std::filesystem::path &path);
/// Throws IoError or SchemaMismatch (also when `expected` is given and differs
/// in any shape field).
Checkpoint load_params(const std::filesystem::path &path, const MlpSpec *expected = nullptr);

}  // namespace qse
