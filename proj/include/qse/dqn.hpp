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

// Deep Q-learning over the spin environment: replay memory, epsilon-greedy
// exploration with linear decay, DQN and Double DQN bootstrap targets, and the
// training loop.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qse/environment.hpp"
#include "qse/mlp.hpp"
#include "qse/sequences.hpp"

namespace qse {

struct Transition {
    std::vector<double> s;
    std::size_t a = 0;
    std::vector<double> s_next;
    double r = 0.0;
    /// The episode ended at this step (success, timeout or fatal).
    bool terminal = false;
};

/// Fixed-capacity ring buffer with oldest-first eviction and uniform sampling
/// with replacement.
class ReplayMemory {
   public:
    ReplayMemory(std::size_t capacity, std::uint64_t seed);

    void push(Transition t);
    std::size_t size() const {
        return buffer_.size();
    }
    std::size_t capacity() const {
        return capacity_;
    }
    /// i = 0 is the oldest stored transition.
    const Transition &at(std::size_t i) const;
    /// Throws std::logic_error when empty.
    std::vector<const Transition *> sample(std::size_t n);

   private:
    std::size_t capacity_;
    std::vector<Transition> buffer_;
    std::size_t next_ = 0;
    Rng rng_;
};

enum class Algorithm { dqn, ddqn };
std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct AgentConfig {
    Algorithm algorithm = Algorithm::dqn;
    double gamma = 0.95;
    double eps_start = 1.0;
    double eps_min = 0.1;
    std::size_t eps_decay_steps = 1200;
    std::size_t training_steps = 2000;
    std::size_t episodes_per_step = 20;
    std::size_t batch_size = 64;
    std::size_t updates_per_step = 1;
    std::size_t replay_capacity = 50000;
    double target_mix = 0.01;
    double learning_rate = 1e-3;

    /// Throws ConfigError.
    void validate() const;
};

/// max(eps_min, eps_start - step * (eps_start - eps_min) / eps_decay_steps).
double epsilon_at(std::size_t step, const AgentConfig &cfg);

/// Index of the largest value; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

/// Uniformly random action with probability eps, greedy otherwise.
Action select_action(const MlpParams &qnet, std::span<const double> state, double eps, Rng &rng);

/// y = r for terminal transitions, r + gamma * max_a' Q(s', a') otherwise.
std::vector<double> dqn_targets(std::span<const Transition *const> batch, const MlpParams &main,
                                double gamma);
/// y = r for terminal transitions, r + gamma * Q_target(s', argmax_a' Q_main(s', a')) otherwise.
std::vector<double> ddqn_targets(std::span<const Transition *const> batch, const MlpParams &main,
                                 const MlpParams &target, double gamma);

/// Seed for item `index` of stream `stream`, derived from the master seed so
/// that results do not depend on how work is split across threads.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

struct Episode {
    SequenceRecord record;
    std::vector<Transition> transitions;
};

/// Plays one episode with an epsilon-greedy policy. Per-step trace distance
/// and purity are filled only if `full_diagnostics`.
Episode run_episode(const Environment &env, const MlpParams &qnet, double eps, Rng &rng,
                    bool keep_transitions, bool full_diagnostics = false);

struct TrainingLogRow {
    std::size_t step = 0;
    double epsilon = 0.0;
    double avg_return = 0.0;
    double success_fraction = 0.0;
    double loss_mean = 0.0;
    std::size_t episodes = 0;
};

struct TrainingLog {
    std::vector<TrainingLogRow> rows;
};

struct TrainingOptions {
    std::uint64_t master_seed = 0;
    /// 1-based training steps after which a checkpoint is written.
    std::vector<std::size_t> checkpoint_steps;
    std::filesystem::path checkpoint_dir;
    std::size_t workers = 1;
    std::function<void(const TrainingLogRow &)> on_step;
};

struct TrainingResult {
    TrainingLog log;
    MlpParams main;
    MlpParams target;
};

/// Path of the checkpoint for a given training step inside `dir`.
std::filesystem::path checkpoint_path(const std::filesystem::path &dir, std::size_t step);

/// Throws NonFiniteLoss after writing a diagnostic dump to checkpoint_dir (if set).
TrainingResult run_training(const EnvConfig &env_cfg, const AgentConfig &agent_cfg,
                            const MlpSpec &mlp_spec, const TrainingOptions &options);

struct Evaluation {
    std::vector<SequenceRecord> episodes;
    double mean_return = 0.0;
    double success_fraction = 0.0;
};

/// Plays n_episodes without learning. Throws std::invalid_argument for n_episodes == 0.
Evaluation evaluate_policy(const MlpParams &qnet, const EnvConfig &env_cfg, double eps,
                           std::size_t n_episodes, std::uint64_t seed, std::size_t workers = 1);

}  // namespace qse
