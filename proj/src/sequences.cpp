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

#include "qse/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include "parallel.hpp"

namespace qse {
namespace {

constexpr std::array<std::pair<Axis, Sign>, 6> kAxisKets = {
    std::pair{Axis::x, Sign::plus}, std::pair{Axis::x, Sign::minus},
    std::pair{Axis::y, Sign::plus}, std::pair{Axis::y, Sign::minus},
    std::pair{Axis::z, Sign::plus}, std::pair{Axis::z, Sign::minus}};

std::string ket_name(Axis axis, Sign sign) {
    const char a = axis == Axis::x ? 'x' : axis == Axis::y ? 'y' : 'z';
    return std::string{a, sign == Sign::plus ? '+' : '-'};
}

StepDiagnostics diagnose(const DensityMatrix &rho, const DensityMatrix &target, double prob) {
    const DensityMatrix bath = reduce_to_bath(rho);
    return StepDiagnostics{prob, fidelity(bath, target), trace_distance(bath, target),
                           purity(bath)};
}

// Depth-first enumeration below `prefix`; successes are collected as action lists.
void enumerate(const Environment &env, const DensityMatrix &rho, std::vector<Action> &prefix,
               double rate, std::size_t max_len, double cutoff,
               std::vector<std::vector<Action>> &out) {
    const EnvConfig &cfg = env.config();
    const DensityMatrix evolved = evolve(rho, env.propagator());
    for (std::size_t i = 0; i < kNumActions; ++i) {
        const Action a = action_from_index(i);
        double prob = 1.0;
        DensityMatrix next = evolved;
        if (a != Action::idle) {
            const CentralProjector &p = env.projector(a);
            prob = branch_probability(evolved, p);
            if (!(prob > cfg.probability_floor) || rate * prob < cutoff) {
                continue;
            }
            next = measure(evolved, p, cfg.probability_floor).state;
        }
        prefix.push_back(a);
        if (env.target_fidelity(next) > cfg.theta) {
            out.push_back(prefix);
        } else if (prefix.size() < max_len) {
            enumerate(env, next, prefix, rate * prob, max_len, cutoff, out);
        }
        prefix.pop_back();
    }
}

}  // namespace

std::string describe_qubit(const QubitState &q) {
    const ComplexVector v = q.vector();
    for (const auto &[axis, sign] : kAxisKets) {
        const double overlap = std::abs(qubit_ket(axis, sign).dot(v));
        if (std::abs(overlap - 1.0) < 1e-12) {
            return ket_name(axis, sign);
        }
    }
    const double theta = 2.0 * std::acos(std::clamp(std::abs(v(0)), 0.0, 1.0));
    const double phi = std::arg(v(1)) - std::arg(v(0));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "bloch:%.6f,%.6f", theta, std::remainder(phi, 2.0 * std::numbers::pi));
    return buf;
}

SequenceRecord replay_sequence(const Environment &env, const DensityMatrix &start,
                               std::span<const Action> actions, std::string start_label) {
    const EnvConfig &cfg = env.config();
    const DensityMatrix target = DensityMatrix::pure(env.target_vector());
    SequenceRecord rec;
    rec.start = std::move(start_label);
    rec.final_fidelity = fidelity(reduce_to_bath(start), target);

    DensityMatrix rho = start;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const Action a = actions[i];
        rho = evolve(rho, env.propagator());
        double prob = 1.0;
        if (a != Action::idle) {
            const CentralProjector &p = env.projector(a);
            prob = branch_probability(rho, p);
            if (!(prob > cfg.probability_floor)) {
                rec.outcome = Outcome::fatal;
                std::ostringstream msg;
                msg << "replay_sequence: step " << i + 1 << " (" << action_name(a)
                    << ") has branch probability " << prob;
                throw SequenceUnderflow(msg.str(), prob, rec, i);
            }
            rho = measure(rho, p, cfg.probability_floor).state;
        }
        rec.actions.push_back(a);
        rec.per_step.push_back(diagnose(rho, target, prob));
        rec.success_rate *= prob;
        rec.final_fidelity = rec.per_step.back().fidelity;
    }
    rec.outcome = rec.final_fidelity > cfg.theta ? Outcome::success : Outcome::continuing;
    return rec;
}

SequenceRecord replay_sequence(const Environment &env, const QubitState &central,
                               std::span<const Action> actions) {
    return replay_sequence(env, env.reset_to(central).raw, actions, describe_qubit(central));
}

std::vector<StepDiagnostics> verify_steady_state(const ModelParams &model,
                                                 std::size_t repetitions,
                                                 std::size_t initial_idle) {
    EnvConfig cfg;
    cfg.model = model;
    cfg.target = BellState::psi_minus;
    const Environment env(cfg);
    std::vector<Action> actions(initial_idle, Action::idle);
    actions.insert(actions.end(), repetitions, Action::project_x_plus);
    const SequenceRecord rec =
        replay_sequence(env, QubitState::from_ket(Axis::x, Sign::plus), actions);
    return std::vector<StepDiagnostics>(rec.per_step.begin() + static_cast<std::ptrdiff_t>(initial_idle),
                                        rec.per_step.end());
}

std::vector<SequenceRecord> exhaustive_search(const Environment &env, const QubitState &start,
                                              std::size_t max_len, const SearchOptions &options) {
    // 7^max_len with saturation.
    double combinations = 1.0;
    for (std::size_t i = 0; i < max_len; ++i) {
        combinations *= static_cast<double>(kNumActions);
    }
    if (combinations > static_cast<double>(options.budget)) {
        std::ostringstream msg;
        msg << "exhaustive_search: 7^" << max_len << " sequences exceed the budget of "
            << options.budget;
        throw BudgetExceeded(msg.str());
    }
    if (max_len == 0) {
        return {};
    }

    const DensityMatrix rho0 = env.reset_to(start).raw;
    const EnvConfig &cfg = env.config();
    const DensityMatrix evolved = evolve(rho0, env.propagator());

    // One branch per first action; merged in action order.
    std::vector<std::vector<std::vector<Action>>> found(kNumActions);
    detail::parallel_for(kNumActions, options.workers, [&](std::size_t i) {
        const Action a = action_from_index(i);
        double prob = 1.0;
        DensityMatrix next = evolved;
        if (a != Action::idle) {
            const CentralProjector &p = env.projector(a);
            prob = branch_probability(evolved, p);
            if (!(prob > cfg.probability_floor) || prob < options.rate_cutoff) {
                return;
            }
            next = measure(evolved, p, cfg.probability_floor).state;
        }
        std::vector<Action> prefix{a};
        if (env.target_fidelity(next) > cfg.theta) {
            found[i].push_back(prefix);
        } else if (max_len > 1) {
            enumerate(env, next, prefix, prob, max_len, options.rate_cutoff, found[i]);
        }
    });

    std::vector<SequenceRecord> records;
    const std::string label = describe_qubit(start);
    for (const auto &branch : found) {
        for (const auto &actions : branch) {
            SequenceRecord rec = replay_sequence(env, rho0, actions, label);
            rec.outcome = Outcome::success;
            records.push_back(std::move(rec));
        }
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const SequenceRecord &a, const SequenceRecord &b) {
                         if (a.actions.size() != b.actions.size()) {
                             return a.actions.size() < b.actions.size();
                         }
                         if (a.success_rate != b.success_rate) {
                             return a.success_rate > b.success_rate;
                         }
                         return a.actions < b.actions;
                     });
    return records;
}

ActionCombinationHistogram combination_histogram(std::span<const SequenceRecord> records,
                                                 HistogramFilter filter) {
    ActionCombinationHistogram hist;
    std::set<std::vector<Action>> seen;
    for (const SequenceRecord &rec : records) {
        if (filter.successful_only && rec.outcome != Outcome::success) {
            continue;
        }
        if (filter.unique_only && !seen.insert(rec.actions).second) {
            continue;
        }
        for (std::size_t i = 0; i + 1 < rec.actions.size(); ++i) {
            ++hist[{rec.actions[i], rec.actions[i + 1]}];
        }
    }
    return hist;
}

std::vector<DiagnosticRow> diagnostic_trace(const SequenceRecord &record) {
    std::vector<DiagnosticRow> rows;
    rows.reserve(record.per_step.size());
    for (std::size_t i = 0; i < record.per_step.size(); ++i) {
        const StepDiagnostics &d = record.per_step[i];
        rows.push_back(DiagnosticRow{i + 1, record.actions[i], d.purity, d.fidelity,
                                     d.trace_distance, d.success_prob});
    }
    return rows;
}

std::vector<Action> parse_sequence(std::string_view text) {
    std::vector<std::string> tokens;
    {
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) {
            tokens.push_back(tok);
        }
    }
    std::vector<Action> actions;
    std::size_t pending = 0;  // evolution periods announced by U<k> tokens
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string &tok = tokens[i];
        if (tok.size() >= 2 && tok[0] == 'U') {
            std::size_t k = 0;
            bool ok = true;
            for (std::size_t c = 1; c < tok.size(); ++c) {
                if (tok[c] < '0' || tok[c] > '9') {
                    ok = false;
                    break;
                }
                k = k * 10 + static_cast<std::size_t>(tok[c] - '0');
                if (k > 1000) {
                    ok = false;
                    break;
                }
            }
            if (!ok || k == 0) {
                throw ParseError("parse_sequence: bad evolution count '" + tok + "' at token " +
                                     std::to_string(i),
                                 i);
            }
            pending += k;
            continue;
        }
        Action a;
        if (!parse_action(tok, a)) {
            throw ParseError("parse_sequence: unknown action '" + tok + "' at token " +
                                 std::to_string(i),
                             i);
        }
        if (pending > 1) {
            actions.insert(actions.end(), pending - 1, Action::idle);
        }
        pending = 0;
        actions.push_back(a);
    }
    actions.insert(actions.end(), pending, Action::idle);
    return actions;
}

std::string format_actions(std::span<const Action> actions) {
    std::string out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += action_name(actions[i]);
    }
    return out;
}

std::string format_table_notation(std::span<const Action> actions) {
    std::string out;
    std::size_t idle = 0;
    auto emit = [&out](const std::string &tok) {
        if (!out.empty()) {
            out += ' ';
        }
        out += tok;
    };
    for (Action a : actions) {
        if (a == Action::idle) {
            ++idle;
            continue;
        }
        emit("U" + std::to_string(idle + 1));
        emit(std::string(action_name(a)));
        idle = 0;
    }
    if (idle > 0) {
        emit("U" + std::to_string(idle));
    }
    return out;
}

}  // namespace qse
