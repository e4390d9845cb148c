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

// Run configuration: a sectioned key = value text file.
//
//   [model]  n_bath, couplings, omega, tau, central_scale, bath_scale
//   [env]    target, theta, r_plus, r_minus, r_fatal, max_steps,
//            probability_floor, start_mode, start_state, validate_states
//   [agent]  algorithm, gamma, eps_start, eps_min, eps_decay_steps,
//            training_steps, episodes_per_step, batch_size, updates_per_step,
//            replay_capacity, target_mix, learning_rate
//   [mlp]    hidden, activation, init_seed
//   [run]    master_seed, checkpoint_steps, output_dir, workers
//
// '#' starts a comment. Missing keys keep their defaults; unknown keys are
// errors. See docs/formats.md for units and defaults.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qse/dqn.hpp"
#include "qse/environment.hpp"
#include "qse/mlp.hpp"

namespace qse {

struct RunConfig {
    EnvConfig env;
    AgentConfig agent;
    MlpSpec mlp;
    /// Source text of env.custom_start ("x-" or "bloch <theta> <phi>").
    std::string start_state = "x+";
    std::uint64_t master_seed = 0;
    std::vector<std::size_t> checkpoint_steps;
    std::filesystem::path output_dir = "runs/default";
    std::size_t workers = 1;

    /// Validates every section, including that the network input matches the
    /// environment encoding. Throws ConfigError.
    void validate() const;
};

/// Throws ConfigError ("line N: section.key: ...") on malformed input or
/// invalid values.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path &path);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig &cfg);

/// 16 hex digits of the FNV-1a hash of serialize_config(cfg).
std::string config_hash(const RunConfig &cfg);

/// Interprets a start_state value; throws ConfigError.
QubitState parse_start_state(std::string_view text);

}  // namespace qse
