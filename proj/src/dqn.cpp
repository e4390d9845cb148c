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

#include "qse/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "qse/errors.hpp"

namespace qse {
namespace {

constexpr std::uint64_t kEpisodeStream = 1;
constexpr std::uint64_t kReplayStream = 2;

double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::MatrixXd stack_states(std::span<const Transition *const> batch, bool next) {
    const std::size_t width = next ? batch.front()->s_next.size() : batch.front()->s.size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(batch.size()));
    for (std::size_t j = 0; j < batch.size(); ++j) {
        const std::vector<double> &v = next ? batch[j]->s_next : batch[j]->s;
        if (v.size() != width) {
            throw ShapeMismatch("transition batch mixes state encodings of different lengths");
        }
        m.col(static_cast<Eigen::Index>(j)) =
            Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(width));
    }
    return m;
}

std::size_t column_argmax(const Eigen::MatrixXd &q, Eigen::Index col) {
    std::size_t best = 0;
    for (Eigen::Index a = 1; a < q.rows(); ++a) {
        if (q(a, col) > q(static_cast<Eigen::Index>(best), col)) {
            best = static_cast<std::size_t>(a);
        }
    }
    return best;
}

}  // namespace

ReplayMemory::ReplayMemory(std::size_t capacity, std::uint64_t seed)
    : capacity_(capacity), rng_(seed) {
    if (capacity == 0) {
        throw ConfigError("agent.replay_capacity: must be at least 1");
    }
}

void ReplayMemory::push(Transition t) {
    if (buffer_.size() < capacity_) {
        buffer_.push_back(std::move(t));
    } else {
        buffer_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
}

const Transition &ReplayMemory::at(std::size_t i) const {
    if (i >= buffer_.size()) {
        throw std::out_of_range("ReplayMemory::at: index out of range");
    }
    // Once full, next_ points at the oldest entry.
    const std::size_t oldest = buffer_.size() < capacity_ ? 0 : next_;
    return buffer_[(oldest + i) % buffer_.size()];
}

std::vector<const Transition *> ReplayMemory::sample(std::size_t n) {
    if (buffer_.empty()) {
        throw std::logic_error("ReplayMemory::sample: memory is empty");
    }
    std::vector<const Transition *> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(&buffer_[rng_() % buffer_.size()]);
    }
    return out;
}

std::string_view algorithm_name(Algorithm a) {
    return a == Algorithm::dqn ? "dqn" : "ddqn";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "dqn") {
        return Algorithm::dqn;
    }
    if (name == "ddqn") {
        return Algorithm::ddqn;
    }
    throw ConfigError("agent.algorithm: expected dqn or ddqn, got '" + std::string(name) + "'");
}

void AgentConfig::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("agent.gamma: must lie in [0, 1]");
    }
    if (!(eps_min >= 0.0 && eps_min <= eps_start && eps_start <= 1.0)) {
        throw ConfigError("agent.eps_start/eps_min: need 0 <= eps_min <= eps_start <= 1");
    }
    if (eps_decay_steps == 0) {
        throw ConfigError("agent.eps_decay_steps: must be at least 1");
    }
    if (episodes_per_step == 0) {
        throw ConfigError("agent.episodes_per_step: must be at least 1");
    }
    if (batch_size == 0) {
        throw ConfigError("agent.batch_size: must be at least 1");
    }
    if (replay_capacity == 0) {
        throw ConfigError("agent.replay_capacity: must be at least 1");
    }
    if (!(target_mix >= 0.0 && target_mix <= 1.0)) {
        throw ConfigError("agent.target_mix: must lie in [0, 1]");
    }
    if (!(learning_rate > 0.0)) {
        throw ConfigError("agent.learning_rate: must be positive");
    }
}

double epsilon_at(std::size_t step, const AgentConfig &cfg) {
    const double slope = (cfg.eps_start - cfg.eps_min) / static_cast<double>(cfg.eps_decay_steps);
    return std::max(cfg.eps_min, cfg.eps_start - static_cast<double>(step) * slope);
}

std::size_t argmax(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

Action select_action(const MlpParams &qnet, std::span<const double> state, double eps, Rng &rng) {
    if (eps > 0.0 && uniform01(rng) < eps) {
        return action_from_index(rng() % kNumActions);
    }
    const std::vector<double> q = forward(qnet, state);
    return action_from_index(argmax(q));
}

std::vector<double> dqn_targets(std::span<const Transition *const> batch, const MlpParams &main,
                                double gamma) {
    if (batch.empty()) {
        throw std::invalid_argument("dqn_targets: empty batch");
    }
    const Eigen::MatrixXd q_next = forward_batch(main, stack_states(batch, true));
    std::vector<double> y(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) {
        const Transition &t = *batch[j];
        y[j] = t.terminal ? t.r : t.r + gamma * q_next.col(static_cast<Eigen::Index>(j)).maxCoeff();
    }
    return y;
}

std::vector<double> ddqn_targets(std::span<const Transition *const> batch, const MlpParams &main,
                                 const MlpParams &target, double gamma) {
    if (batch.empty()) {
        throw std::invalid_argument("ddqn_targets: empty batch");
    }
    const Eigen::MatrixXd next = stack_states(batch, true);
    const Eigen::MatrixXd q_main = forward_batch(main, next);
    const Eigen::MatrixXd q_target = forward_batch(target, next);
    std::vector<double> y(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) {
        const Transition &t = *batch[j];
        if (t.terminal) {
            y[j] = t.r;
            continue;
        }
        const auto col = static_cast<Eigen::Index>(j);
        const auto best = static_cast<Eigen::Index>(column_argmax(q_main, col));
        y[j] = t.r + gamma * q_target(best, col);
    }
    return y;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master) ^ stream) ^ index);
}

Episode run_episode(const Environment &env, const MlpParams &qnet, double eps, Rng &rng,
                    bool keep_transitions, bool full_diagnostics) {
    const QubitState start = env.draw_start(rng);
    EnvState state = env.reset_to(start);
    Episode ep;
    ep.record.start = describe_qubit(start);
    ep.record.final_fidelity = env.target_fidelity(state.raw);
    const DensityMatrix target = DensityMatrix::pure(env.target_vector());

    while (!state.done) {
        const Action a = select_action(qnet, state.encoding, eps, rng);
        StepResult res = env.step(state, a);
        StepDiagnostics diag{res.success_prob, res.fidelity, 0.0, 0.0};
        if (full_diagnostics && res.outcome != Outcome::fatal) {
            const DensityMatrix bath = reduce_to_bath(res.next.raw);
            diag.trace_distance = trace_distance(bath, target);
            diag.purity = purity(bath);
        }
        if (keep_transitions) {
            ep.transitions.push_back(
                Transition{state.encoding, action_index(a), res.next.encoding, res.reward, res.done});
        }
        ep.record.actions.push_back(a);
        ep.record.per_step.push_back(diag);
        ep.record.success_rate *= res.success_prob;
        ep.record.final_fidelity = res.fidelity;
        ep.record.total_reward += res.reward;
        ep.record.outcome = res.outcome;
        state = std::move(res.next);
    }
    return ep;
}

std::filesystem::path checkpoint_path(const std::filesystem::path &dir, std::size_t step) {
    char name[64];
    std::snprintf(name, sizeof(name), "checkpoint_step%06zu.json", step);
    return dir / name;
}

TrainingResult run_training(const EnvConfig &env_cfg, const AgentConfig &agent_cfg,
                            const MlpSpec &mlp_spec, const TrainingOptions &options) {
    agent_cfg.validate();
    const Environment env(env_cfg);
    if (mlp_spec.input_size != env.encoding_size() || mlp_spec.output_size != kNumActions) {
        std::ostringstream msg;
        msg << "mlp: network must map " << env.encoding_size() << " inputs to " << kNumActions
            << " outputs for this environment";
        throw ConfigError(msg.str());
    }

    TrainingResult result{{}, MlpParams::initialize(mlp_spec), MlpParams::initialize(mlp_spec)};
    MlpParams &main = result.main;
    MlpParams &target = result.target;
    AdamState optimizer(main, AdamConfig{.learning_rate = agent_cfg.learning_rate});
    ReplayMemory memory(agent_cfg.replay_capacity,
                        derive_seed(options.master_seed, kReplayStream, 0));

    if (!options.checkpoint_steps.empty() && !options.checkpoint_dir.empty()) {
        std::filesystem::create_directories(options.checkpoint_dir);
    }

    std::uint64_t episode_counter = 0;
    std::vector<Episode> episodes(agent_cfg.episodes_per_step);
    for (std::size_t step = 1; step <= agent_cfg.training_steps; ++step) {
        const double eps = epsilon_at(step - 1, agent_cfg);
        const std::uint64_t first_episode = episode_counter;
        detail::parallel_for(episodes.size(), options.workers, [&](std::size_t i) {
            Rng rng(derive_seed(options.master_seed, kEpisodeStream, first_episode + i));
            episodes[i] = run_episode(env, main, eps, rng, true);
        });
        episode_counter += episodes.size();

        TrainingLogRow row;
        row.step = step;
        row.epsilon = eps;
        row.episodes = episodes.size();
        std::size_t successes = 0;
        for (Episode &ep : episodes) {
            row.avg_return += ep.record.total_reward;
            successes += ep.record.outcome == Outcome::success ? 1 : 0;
            for (Transition &t : ep.transitions) {
                memory.push(std::move(t));
            }
        }
        row.avg_return /= static_cast<double>(episodes.size());
        row.success_fraction = static_cast<double>(successes) / static_cast<double>(episodes.size());

        for (std::size_t u = 0; u < agent_cfg.updates_per_step; ++u) {
            const std::vector<const Transition *> batch = memory.sample(agent_cfg.batch_size);
            const std::vector<double> y =
                agent_cfg.algorithm == Algorithm::dqn
                    ? dqn_targets(batch, main, agent_cfg.gamma)
                    : ddqn_targets(batch, main, target, agent_cfg.gamma);
            std::vector<ActionTarget> targets(batch.size());
            for (std::size_t j = 0; j < batch.size(); ++j) {
                targets[j] = ActionTarget{batch[j]->a, y[j]};
            }
            try {
                row.loss_mean += train_batch(main, stack_states(batch, false), targets, optimizer);
            } catch (const NonFiniteLoss &e) {
                if (!options.checkpoint_dir.empty()) {
                    std::filesystem::create_directories(options.checkpoint_dir);
                    const auto dump = options.checkpoint_dir / "diverged_main.json";
                    save_params(main, step, dump);
                    std::ofstream note(options.checkpoint_dir / "diverged.txt");
                    note << "training step " << step << ", update " << u << ", epsilon " << eps
                         << ", replay size " << memory.size() << "\n"
                         << e.what() << "\n";
                }
                std::ostringstream msg;
                msg << e.what() << " at training step " << step;
                throw NonFiniteLoss(msg.str());
            }
            if (agent_cfg.algorithm == Algorithm::ddqn) {
                soft_update(target, main, agent_cfg.target_mix);
            }
        }
        if (agent_cfg.updates_per_step > 0) {
            row.loss_mean /= static_cast<double>(agent_cfg.updates_per_step);
        }

        result.log.rows.push_back(row);
        if (options.on_step) {
            options.on_step(row);
        }
        if (!options.checkpoint_dir.empty() &&
            std::find(options.checkpoint_steps.begin(), options.checkpoint_steps.end(), step) !=
                options.checkpoint_steps.end()) {
            save_params(main, step, checkpoint_path(options.checkpoint_dir, step));
        }
    }
    return result;
}

Evaluation evaluate_policy(const MlpParams &qnet, const EnvConfig &env_cfg, double eps,
                           std::size_t n_episodes, std::uint64_t seed, std::size_t workers) {
    if (n_episodes == 0) {
        throw std::invalid_argument("evaluate_policy: n_episodes must be at least 1");
    }
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("evaluate_policy: eps must lie in [0, 1]");
    }
    const Environment env(env_cfg);
    Evaluation eval;
    eval.episodes.resize(n_episodes);
    detail::parallel_for(n_episodes, workers, [&](std::size_t i) {
        Rng rng(derive_seed(seed, kEpisodeStream, i));
        eval.episodes[i] = run_episode(env, qnet, eps, rng, false, true).record;
    });
    std::size_t successes = 0;
    for (const SequenceRecord &r : eval.episodes) {
        eval.mean_return += r.total_reward;
        successes += r.outcome == Outcome::success ? 1 : 0;
    }
    eval.mean_return /= static_cast<double>(n_episodes);
    eval.success_fraction = static_cast<double>(successes) / static_cast<double>(n_episodes);
    return eval;
}

}  // namespace qse
