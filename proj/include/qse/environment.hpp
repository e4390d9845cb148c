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

// Markov decision process over the full spin density matrix.
//
// Each step lets the system evolve freely for tau and then applies one of
// seven actions: a post-selected projection of the central spin onto
// |z±>, |x±>, |y±>, or nothing. The agent observes every independent entry of
// the density matrix.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qse/spin_model.hpp"

namespace qse {

using Rng = std::mt19937_64;

inline constexpr std::size_t kNumActions = 7;

enum class Action : std::uint8_t {
    project_z_plus = 0,
    project_z_minus = 1,
    project_x_plus = 2,
    project_x_minus = 3,
    project_y_plus = 4,
    project_y_minus = 5,
    idle = 6,
};

/// Short names used in tables and the sequence grammar: Pz+ Pz- Px+ Px- Py+ Py- I.
std::string_view action_name(Action a);
/// Accepts action_name() spellings plus "-", "noop" and "id" for idle.
/// Returns false on unknown names.
bool parse_action(std::string_view token, Action &out);
Action action_from_index(std::size_t index);
inline std::size_t action_index(Action a) {
    return static_cast<std::size_t>(a);
}
/// True for the four projections onto equatorial (superposition) states.
bool is_superposition_projection(Action a);

enum class StartMode { fixed_xplus, random_pure, fixed_custom };

/// Normalized single-qubit state used for fixed_custom starts.
struct QubitState {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    static QubitState from_ket(Axis axis, Sign sign);
    /// cos(theta/2)|z+> + e^{i phi} sin(theta/2)|z->.
    static QubitState from_bloch(double theta, double phi);
    /// "x+", "z-", ... ; throws ConfigError otherwise.
    static QubitState from_name(std::string_view name);
    ComplexVector vector() const;
};

struct EnvConfig {
    ModelParams model;
    BellState target = BellState::psi_minus;
    double theta = 0.99;
    double r_plus = 10.0;
    double r_minus = -1.0;
    double r_fatal = -51.0;
    std::size_t max_steps = 50;
    double probability_floor = kDefaultProbabilityFloor;
    StartMode start_mode = StartMode::fixed_xplus;
    QubitState custom_start;
    /// Check density-matrix invariants after every step (slow).
    bool validate_states = false;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct EnvState {
    std::vector<double> encoding;
    DensityMatrix raw;
    std::size_t step_count = 0;
    bool done = false;
};

enum class Outcome { success, continuing, timeout, fatal };
std::string_view outcome_name(Outcome o);

struct StepResult {
    EnvState next;
    double reward = 0.0;
    bool done = false;
    /// Branch probability of the projection; 1 for idle.
    double success_prob = 1.0;
    /// Fidelity of the reduced bath state to the target (0 after a fatal step).
    double fidelity = 0.0;
    Outcome outcome = Outcome::continuing;
};

/// Length of the real encoding for a dim x dim density matrix:
/// 2 * (dim*(dim+1)/2 - 1). 70 for dim = 8.
std::size_t encoding_length(std::size_t dim);

/// Upper triangle (row-major, diagonal included) minus the last diagonal entry,
/// emitted as (real, imaginary) pairs.
std::vector<double> encode_state(const DensityMatrix &rho);
/// Inverse of encode_state assuming Hermiticity and unit trace.
DensityMatrix decode_state(std::span<const double> encoding, std::size_t dim);

/// G = Σ_i gamma^i r_i.
double episode_return(std::span<const double> rewards, double gamma);

/// Precomputes the propagator, projectors and target for one EnvConfig.
/// Immutable after construction and safe to share across threads.
class Environment {
   public:
    explicit Environment(EnvConfig cfg);

    const EnvConfig &config() const {
        return cfg_;
    }
    std::size_t dim() const {
        return cfg_.model.dim();
    }
    std::size_t encoding_size() const {
        return encoding_length(dim());
    }

    /// Start state per cfg.start_mode. Only random_pure consumes randomness.
    EnvState reset(Rng &rng) const;
    /// The central-spin start state reset() would use.
    QubitState draw_start(Rng &rng) const;
    /// Start state with the central spin in `central` and a fully mixed bath.
    EnvState reset_to(const QubitState &central) const;
    EnvState from_density_matrix(DensityMatrix rho, std::size_t step_count = 0) const;

    /// Throws EpisodeFinished if `state.done`.
    StepResult step(const EnvState &state, Action action) const;

    /// Fidelity of the reduced bath state of `rho` to the target Bell state(s).
    double target_fidelity(const DensityMatrix &rho) const;
    const ComplexVector &target_vector() const {
        return target_;
    }
    const ComplexMatrix &propagator() const {
        return propagator_;
    }
    const CentralProjector &projector(Action a) const;

   private:
    EnvConfig cfg_;
    ComplexMatrix propagator_;
    std::array<CentralProjector, 6> projectors_;
    ComplexVector target_;
};

/// Haar-random single-qubit pure state from two standard complex Gaussians.
QubitState haar_random_qubit(Rng &rng);

}  // namespace qse
