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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qse/dqn.hpp"
#include "qse/errors.hpp"

using namespace qse;

namespace {

MlpSpec tiny_spec() {
    MlpSpec s;
    s.input_size = 70;
    s.hidden = {16};
    s.output_size = 7;
    s.init_seed = 5;
    return s;
}

// Network whose outputs equal `values` for every input.
MlpParams constant_net(const std::array<double, 7> &values) {
    MlpParams p = MlpParams::zeros(tiny_spec());
    for (int k = 0; k < 7; ++k) {
        p.layers.back().bias(k) = values[k];
    }
    return p;
}

Transition make_transition(double r, bool terminal, std::size_t a = 0) {
    return Transition{std::vector<double>(70, 0.0), a, std::vector<double>(70, 0.0), r, terminal};
}

}  // namespace

TEST(ReplayMemory, EvictsOldestFirst) {
    ReplayMemory m(3, 1);
    for (int i = 0; i < 5; ++i) {
        m.push(make_transition(i, false));
    }
    EXPECT_EQ(m.size(), 3u);
    EXPECT_EQ(m.at(0).r, 2.0);
    EXPECT_EQ(m.at(2).r, 4.0);
    EXPECT_THROW(m.at(3), std::out_of_range);
}

TEST(ReplayMemory, SamplesWithReplacementFromStoredOnly) {
    ReplayMemory empty(4, 1);
    EXPECT_THROW(empty.sample(1), std::logic_error);
    ReplayMemory m(10, 2);
    m.push(make_transition(1.0, false));
    m.push(make_transition(2.0, false));
    const auto batch = m.sample(50);
    ASSERT_EQ(batch.size(), 50u);
    std::set<double> seen;
    for (const Transition *t : batch) {
        seen.insert(t->r);
    }
    EXPECT_EQ(seen, (std::set<double>{1.0, 2.0}));
}

TEST(Epsilon, LinearDecayToFloor) {
    AgentConfig c;
    c.eps_start = 1.0;
    c.eps_min = 0.1;
    c.eps_decay_steps = 100;
    EXPECT_DOUBLE_EQ(epsilon_at(0, c), 1.0);
    EXPECT_NEAR(epsilon_at(50, c), 0.55, 1e-15);
    EXPECT_DOUBLE_EQ(epsilon_at(100, c), 0.1);
    EXPECT_DOUBLE_EQ(epsilon_at(1000, c), 0.1);
}

TEST(Argmax, LowestIndexWinsTies) {
    const double v[] = {1.0, 3.0, 3.0, -2.0};
    EXPECT_EQ(argmax(v), 1u);
}

TEST(SelectAction, GreedyAtZeroEpsilon) {
    const MlpParams q = constant_net({0, 0, 0, 0, 4, 0, 1});
    Rng rng(1);
    const std::vector<double> s(70, 0.3);
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(select_action(q, s, 0.0, rng), Action::project_y_plus);
    }
}

TEST(SelectAction, UniformAtEpsilonOne) {
    const MlpParams q = constant_net({0, 0, 0, 0, 4, 0, 1});
    Rng rng(12345);
    const std::vector<double> s(70, 0.0);
    std::array<int, 7> counts{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        ++counts[action_index(select_action(q, s, 1.0, rng))];
    }
    const double expected = n / 7.0;
    double chi2 = 0.0;
    for (int c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // 6 degrees of freedom: 99.9% quantile is 22.46
    EXPECT_LT(chi2, 22.46);
}

TEST(Targets, TerminalUsesRewardOnly) {
    const MlpParams main = constant_net({1, 2, 3, 4, 5, 6, 7});
    const Transition t = make_transition(10.0, true);
    const Transition *batch[] = {&t};
    EXPECT_EQ(dqn_targets(batch, main, 0.95)[0], 10.0);
    EXPECT_EQ(ddqn_targets(batch, main, main, 0.95)[0], 10.0);
}

TEST(Targets, DqnBootstrapsFromMainMax) {
    const MlpParams main = constant_net({1, 2, 3, 9, 5, 6, 7});
    const Transition t = make_transition(-1.0, false);
    const Transition *batch[] = {&t};
    EXPECT_DOUBLE_EQ(dqn_targets(batch, main, 0.5)[0], -1.0 + 0.5 * 9.0);
}

TEST(Targets, DdqnEvaluatesMainChoiceWithTargetNet) {
    // main prefers action 1; the target net rates action 1 at 2 but its own
    // maximum is 9 at action 0.
    const MlpParams main = constant_net({0, 5, 1, 0, 0, 0, 0});
    const MlpParams target = constant_net({9, 2, 0, 0, 0, 0, 0});
    const Transition t = make_transition(-1.0, false);
    const Transition *batch[] = {&t};
    EXPECT_DOUBLE_EQ(ddqn_targets(batch, main, target, 0.9)[0], -1.0 + 0.9 * 2.0);
    EXPECT_THROW(ddqn_targets(std::span<const Transition *const>{}, main, target, 0.9), std::invalid_argument);
}

TEST(DeriveSeed, DistinctAcrossStreamsAndIndices) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t stream = 0; stream < 3; ++stream) {
        for (std::uint64_t i = 0; i < 100; ++i) {
            seeds.insert(derive_seed(7, stream, i));
        }
    }
    EXPECT_EQ(seeds.size(), 300u);
    EXPECT_EQ(derive_seed(7, 1, 5), derive_seed(7, 1, 5));
    EXPECT_NE(derive_seed(7, 1, 5), derive_seed(8, 1, 5));
}

TEST(RunEpisode, TransitionsChainAndEndTerminal) {
    const Environment env(EnvConfig{});
    const MlpParams q = MlpParams::initialize(tiny_spec());
    Rng rng(4);
    const Episode ep = run_episode(env, q, 1.0, rng, true);
    ASSERT_FALSE(ep.transitions.empty());
    EXPECT_EQ(ep.transitions.size(), ep.record.actions.size());
    for (std::size_t i = 0; i + 1 < ep.transitions.size(); ++i) {
        EXPECT_EQ(ep.transitions[i].s_next, ep.transitions[i + 1].s);
        EXPECT_FALSE(ep.transitions[i].terminal);
    }
    EXPECT_TRUE(ep.transitions.back().terminal);
    EXPECT_EQ(ep.record.start, "x+");
    double total = 0.0;
    for (const Transition &t : ep.transitions) {
        total += t.r;
    }
    EXPECT_DOUBLE_EQ(total, ep.record.total_reward);
}

TEST(Training, ParallelMatchesSerial) {
    EnvConfig env;
    AgentConfig agent;
    agent.training_steps = 6;
    agent.episodes_per_step = 4;
    agent.batch_size = 8;
    agent.eps_decay_steps = 4;
    agent.algorithm = Algorithm::ddqn;
    TrainingOptions serial;
    serial.master_seed = 11;
    TrainingOptions parallel = serial;
    parallel.workers = 3;
    const TrainingResult a = run_training(env, agent, tiny_spec(), serial);
    const TrainingResult b = run_training(env, agent, tiny_spec(), parallel);
    ASSERT_EQ(a.log.rows.size(), 6u);
    for (std::size_t i = 0; i < a.log.rows.size(); ++i) {
        EXPECT_EQ(a.log.rows[i].avg_return, b.log.rows[i].avg_return);
        EXPECT_EQ(a.log.rows[i].loss_mean, b.log.rows[i].loss_mean);
    }
    EXPECT_EQ(a.main.flatten(), b.main.flatten());
}

TEST(Training, RejectsMismatchedNetwork) {
    MlpSpec bad = tiny_spec();
    bad.input_size = 64;
    EXPECT_THROW(run_training(EnvConfig{}, AgentConfig{}, bad, TrainingOptions{}), ConfigError);
}

TEST(Evaluate, RejectsZeroEpisodes) {
    EXPECT_THROW(evaluate_policy(MlpParams::initialize(tiny_spec()), EnvConfig{}, 0.1, 0, 1), std::invalid_argument);
}

TEST(Evaluate, RandomPolicyRarelySucceeds) {
    const Evaluation ev = evaluate_policy(MlpParams::initialize(tiny_spec()), EnvConfig{}, 1.0, 200, 3);
    EXPECT_EQ(ev.episodes.size(), 200u);
    EXPECT_LT(ev.success_fraction, 0.1);
    // each return lies between a fatal last step after 49 penalties and a
    // first-step success
    for (const SequenceRecord &r : ev.episodes) {
        EXPECT_GE(r.total_reward, -51.0 - 49.0);
        EXPECT_LE(r.total_reward, 10.0);
    }
}
