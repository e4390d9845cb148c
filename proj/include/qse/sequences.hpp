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

// Deterministic replay, verification and exhaustive enumeration of
// post-selected measurement sequences.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qse/environment.hpp"
#include "qse/errors.hpp"

namespace qse {

/// Metrics of the reduced bath state after one step of a sequence.
struct StepDiagnostics {
    double success_prob = 1.0;
    double fidelity = 0.0;
    double trace_distance = 0.0;
    double purity = 0.0;
};

struct SequenceRecord {
    /// Label of the central-spin start state ("x+", "bloch:θ,φ", ...).
    std::string start;
    std::vector<Action> actions;
    std::vector<StepDiagnostics> per_step;
    /// Product of the per-step branch probabilities.
    double success_rate = 1.0;
    /// Fidelity after the last step (of the start state for an empty sequence).
    double final_fidelity = 0.0;
    Outcome outcome = Outcome::continuing;
    /// Undiscounted episode reward; zero for pure replays.
    double total_reward = 0.0;
};

/// Raised when a replayed projection underflows; carries the steps executed
/// before the failing one.
class SequenceUnderflow : public NormalizationUnderflow {
   public:
    SequenceUnderflow(const std::string &what, double probability, SequenceRecord partial,
                      std::size_t failed_step)
        : NormalizationUnderflow(what, probability),
          partial_(std::move(partial)),
          failed_step_(failed_step) {
    }
    const SequenceRecord &partial() const {
        return partial_;
    }
    std::size_t failed_step() const {
        return failed_step_;
    }

   private:
    SequenceRecord partial_;
    std::size_t failed_step_;
};

/// Label for a central-spin state: the axis name when it is one of the six
/// axis eigenstates (up to phase), otherwise "bloch:<theta>,<phi>".
std::string describe_qubit(const QubitState &q);

/// Runs U(tau) followed by each action in turn from `start` and records the
/// reduced-state metrics after every step. Does not stop early on success.
/// Throws SequenceUnderflow.
SequenceRecord replay_sequence(const Environment &env, const DensityMatrix &start,
                               std::span<const Action> actions, std::string start_label = "");

/// Convenience overload starting from |central><central| ⊗ 1/2^N.
SequenceRecord replay_sequence(const Environment &env, const QubitState &central,
                               std::span<const Action> actions);

/// Repeats U(tau)-P_x+ `repetitions` times from |x+> ⊗ mixed bath after
/// `initial_idle` free evolutions and returns the metrics (against
/// ⊗ |Ψ-> over consecutive bath pairs) after each projection.
std::vector<StepDiagnostics> verify_steady_state(const ModelParams &model, std::size_t repetitions,
                                                 std::size_t initial_idle = 0);

struct SearchOptions {
    /// Upper bound on 7^max_len.
    std::uint64_t budget = 117649;  // 7^6
    /// Branches whose running success rate drops below this are not expanded.
    double rate_cutoff = 1e-6;
    std::size_t workers = 1;
};

/// All sequences of length 1..max_len whose final step is the first to exceed
/// the fidelity threshold (episode semantics), replayed from `start`.
/// Sorted by length, then descending success rate, then action indices.
/// Throws BudgetExceeded.
std::vector<SequenceRecord> exhaustive_search(const Environment &env, const QubitState &start,
                                              std::size_t max_len,
                                              const SearchOptions &options = {});

using ActionPair = std::pair<Action, Action>;
using ActionCombinationHistogram = std::map<ActionPair, std::size_t>;

struct HistogramFilter {
    bool successful_only = false;
    bool unique_only = false;
};

/// Counts adjacent ordered action pairs.
ActionCombinationHistogram combination_histogram(std::span<const SequenceRecord> records,
                                                 HistogramFilter filter = {});

struct DiagnosticRow {
    std::size_t step;
    Action action;
    double purity;
    double fidelity;
    double trace_distance;
    double success_prob;
};

std::vector<DiagnosticRow> diagnostic_trace(const SequenceRecord &record);

/// Parses "U2 Px+ U1 Px+ ..." and/or plain action names. A U<k> token
/// followed by a projection expands to k-1 idle steps plus that projection;
/// a bare projection implies U1; a trailing U<k> becomes k idle steps.
/// Throws ParseError with the token index.
std::vector<Action> parse_sequence(std::string_view text);
/// Space-separated action names, e.g. "I Px+ Px+".
std::string format_actions(std::span<const Action> actions);
/// Compact evolution notation, e.g. "U2 Px+ U1 Px+".
std::string format_table_notation(std::span<const Action> actions);

}  // namespace qse
