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

#include "qse/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"
#include "qse/config.hpp"
#include "qse/dqn.hpp"
#include "qse/errors.hpp"
#include "qse/sequences.hpp"
#include "qse/tables.hpp"

namespace qse {
namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::string> target;
    std::optional<double> tau;
    std::optional<std::size_t> n_bath;
    std::optional<std::size_t> workers;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--config,config", o.config_path, "Run configuration file");
    cmd->add_option("--target", o.target, "Target Bell state: phi+, phi-, psi+, psi-");
    cmd->add_option("--tau", o.tau, "Free evolution time per step");
    cmd->add_option("--n-bath", o.n_bath, "Number of bath spins (even)");
    cmd->add_option("--workers", o.workers, "Worker threads");
}

RunConfig resolve(const CommonOptions &o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.target) {
        cfg.env.target = parse_bell_state(*o.target);
    }
    if (o.tau) {
        cfg.env.model.tau = *o.tau;
    }
    if (o.n_bath) {
        cfg.env.model = ModelParams::linear_chain(*o.n_bath, cfg.env.model.tau);
        cfg.env.r_fatal = std::min(cfg.env.r_fatal, cfg.env.r_minus * static_cast<double>(cfg.env.max_steps));
        cfg.mlp.input_size = encoding_length(cfg.env.model.dim());
    }
    if (o.workers) {
        cfg.workers = *o.workers;
    }
    cfg.validate();
    return cfg;
}

std::filesystem::path output_root(const RunConfig &cfg, const std::string &override_dir) {
    std::filesystem::path dir = override_dir.empty() ? cfg.output_dir : std::filesystem::path(override_dir);
    if (const char *root = std::getenv("QSE_OUTPUT_ROOT"); root && *root && dir.is_relative()) {
        dir = std::filesystem::path(root) / dir;
    }
    return dir;
}

std::ofstream open_out(const std::filesystem::path &path) {
    std::ofstream f(path);
    if (!f) {
        throw IoError("cannot write " + path.string());
    }
    return f;
}

int cmd_train(const CommonOptions &common, const std::string &out_dir, std::optional<std::uint64_t> seed,
              std::size_t progress_every, std::ostream &out) {
    RunConfig cfg = resolve(common);
    if (seed) {
        cfg.master_seed = *seed;
    }
    const std::filesystem::path dir = output_root(cfg, out_dir);
    std::filesystem::create_directories(dir);
    const RunStamp stamp{config_hash(cfg), cfg.master_seed};

    {
        std::ofstream f = open_out(dir / "config.cfg");
        f << serialize_config(cfg);
    }

    TrainingOptions opts;
    opts.master_seed = cfg.master_seed;
    opts.checkpoint_steps = cfg.checkpoint_steps;
    opts.checkpoint_dir = dir / "checkpoints";
    opts.workers = cfg.workers;
    if (progress_every > 0) {
        opts.on_step = [&](const TrainingLogRow &row) {
            if (row.step % progress_every == 0) {
                out << "step " << row.step << " eps " << row.epsilon << " avg_return " << row.avg_return
                    << " success " << row.success_fraction << " loss " << row.loss_mean << "\n";
            }
        };
    }
    const TrainingResult result = run_training(cfg.env, cfg.agent, cfg.mlp, opts);

    {
        std::ofstream f = open_out(dir / "learning_curve.tsv");
        write_training_log(f, result.log, stamp);
    }
    save_params(result.main, cfg.agent.training_steps, dir / "final.json");

    nlohmann::ordered_json manifest;
    manifest["format"] = "qse-run-manifest";
    manifest["qse_version"] = QSE_VERSION;
    manifest["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                "." + std::to_string(EIGEN_MINOR_VERSION);
    manifest["nlohmann_json_version"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    manifest["config_hash"] = stamp.config_hash;
    manifest["master_seed"] = stamp.master_seed;
    manifest["training_steps"] = cfg.agent.training_steps;
    manifest["algorithm"] = std::string(algorithm_name(cfg.agent.algorithm));
    manifest["target"] = std::string(to_string(cfg.env.target));
    std::vector<std::string> files = {"config.cfg", "learning_curve.tsv", "final.json"};
    for (std::size_t s : cfg.checkpoint_steps) {
        files.push_back(std::filesystem::relative(checkpoint_path(opts.checkpoint_dir, s), dir).string());
    }
    manifest["files"] = files;
    if (!result.log.rows.empty()) {
        manifest["final_avg_return"] = result.log.rows.back().avg_return;
        manifest["final_success_fraction"] = result.log.rows.back().success_fraction;
    }
    {
        std::ofstream f = open_out(dir / "manifest.json");
        f << manifest.dump(2) << "\n";
    }
    out << "wrote " << dir.string() << "\n";
    return kExitOk;
}

void print_evaluation(std::ostream &out, std::string_view policy, double eps, const Evaluation &ev) {
    std::size_t total_len = 0;
    for (const SequenceRecord &r : ev.episodes) {
        total_len += r.actions.size();
    }
    out << policy << '\t' << eps << '\t' << ev.episodes.size() << '\t' << ev.mean_return << '\t'
        << ev.success_fraction << '\t'
        << static_cast<double>(total_len) / static_cast<double>(ev.episodes.size()) << '\n';
}

int cmd_evaluate(const CommonOptions &common, const std::string &checkpoint, bool baseline,
                 std::optional<double> eps, std::size_t episodes, const std::string &start,
                 std::uint64_t seed, const std::string &records_path, std::ostream &out) {
    RunConfig cfg = resolve(common);
    if (!start.empty()) {
        cfg.env.start_mode = StartMode::fixed_custom;
        cfg.env.custom_start = parse_start_state(start);
        cfg.start_state = start;
    }
    if (checkpoint.empty() && !baseline) {
        throw ConfigError("evaluate: --checkpoint is required unless --baseline is given");
    }
    const RunStamp stamp{config_hash(cfg), seed};
    write_header(out, "evaluation", &stamp);
    out << "policy\tepsilon\tepisodes\tmean_return\tsuccess_fraction\tmean_length\n";

    std::optional<Evaluation> trained;
    if (!checkpoint.empty()) {
        const MlpParams qnet = load_params(checkpoint, &cfg.mlp).params;
        const double epsilon = eps.value_or(0.1);
        trained = evaluate_policy(qnet, cfg.env, epsilon, episodes, seed, cfg.workers);
        print_evaluation(out, "trained", epsilon, *trained);
    }
    std::optional<Evaluation> random;
    if (baseline) {
        const double epsilon = checkpoint.empty() ? eps.value_or(1.0) : 1.0;
        random = evaluate_policy(MlpParams::zeros(cfg.mlp), cfg.env, epsilon, episodes, seed, cfg.workers);
        print_evaluation(out, "baseline", epsilon, *random);
    }
    if (!records_path.empty()) {
        std::ofstream f = open_out(records_path);
        write_records(f, trained ? trained->episodes : random->episodes, &stamp);
    }
    return kExitOk;
}

int cmd_replay(const CommonOptions &common, const std::string &sequence, const std::string &start,
               std::ostream &out) {
    const RunConfig cfg = resolve(common);
    const Environment env(cfg.env);
    const std::vector<Action> actions = parse_sequence(sequence);
    const SequenceRecord rec = replay_sequence(env, parse_start_state(start), actions);
    const RunStamp stamp{config_hash(cfg), cfg.master_seed};
    write_diagnostics(out, diagnostic_trace(rec), &stamp);
    out << "# sequence=" << format_actions(rec.actions) << " success_rate=" << rec.success_rate
        << " final_fidelity=" << rec.final_fidelity << " outcome=" << outcome_name(rec.outcome) << "\n";
    return kExitOk;
}

int cmd_search(const CommonOptions &common, std::size_t max_len, const std::string &start,
               std::uint64_t budget, double cutoff, std::ostream &out) {
    const RunConfig cfg = resolve(common);
    const Environment env(cfg.env);
    SearchOptions opts;
    opts.budget = budget;
    opts.rate_cutoff = cutoff;
    opts.workers = cfg.workers;
    const auto hits = exhaustive_search(env, parse_start_state(start), max_len, opts);
    const RunStamp stamp{config_hash(cfg), cfg.master_seed};
    write_search(out, hits, &stamp);
    return kExitOk;
}

int cmd_histogram(const std::string &path, bool successful, bool unique, std::ostream &out) {
    std::ifstream f(path);
    if (!f) {
        throw IoError("cannot read " + path);
    }
    RunStamp stamp;
    const auto records = read_records(f, &stamp);
    HistogramFilter filter;
    filter.successful_only = successful;
    filter.unique_only = unique;
    write_histogram(out, combination_histogram(records, filter), stamp.config_hash.empty() ? nullptr : &stamp);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Sequences of post-selected central-spin measurements that steer a spin bath "
                 "toward Bell states, found by Q-learning or exhaustive search."};
    app.name("qse");
    app.require_subcommand(1);

    CommonOptions train_common;
    std::string train_out;
    std::optional<std::uint64_t> train_seed;
    std::size_t progress_every = 0;
    auto *train = app.add_subcommand("train", "Train a Q-network and write a run directory");
    add_common(train, train_common);
    train->add_option("--output", train_out, "Run directory (default: run.output_dir)");
    train->add_option("--seed", train_seed, "Override run.master_seed");
    train->add_option("--progress", progress_every, "Print a progress line every N steps");

    CommonOptions eval_common;
    std::string eval_checkpoint;
    bool eval_baseline = false;
    std::optional<double> eval_eps;
    std::size_t eval_episodes = 100;
    std::string eval_start;
    std::uint64_t eval_seed = 0;
    std::string eval_records;
    auto *evaluate = app.add_subcommand("evaluate", "Play episodes with a trained or random policy");
    add_common(evaluate, eval_common);
    evaluate->add_option("--checkpoint", eval_checkpoint, "Network checkpoint (JSON)");
    evaluate->add_flag("--baseline", eval_baseline,
                       "Also evaluate a uniformly random policy (eps = 1); alone, --eps applies to it");
    evaluate->add_option("--eps", eval_eps, "Exploration rate")->check(CLI::Range(0.0, 1.0));
    evaluate->add_option("--episodes", eval_episodes, "Number of episodes")->check(CLI::PositiveNumber);
    evaluate->add_option("--start", eval_start, "Fixed central-spin start state (x+, bloch θ φ, ...)");
    evaluate->add_option("--seed", eval_seed, "Evaluation seed");
    evaluate->add_option("--records", eval_records,
                         "Write the played sequences (trained policy if given) to this file");

    CommonOptions replay_common;
    std::string replay_sequence_text;
    std::string replay_start = "x+";
    auto *replay = app.add_subcommand("replay", "Replay a sequence and print per-step diagnostics");
    add_common(replay, replay_common);
    replay->add_option("--sequence,-s", replay_sequence_text, "e.g. \"U2 Px+ U1 Px+\" or \"I Px+ Px+\"")
        ->required();
    replay->add_option("--start", replay_start, "Central-spin start state");

    CommonOptions search_common;
    std::size_t search_len = 5;
    std::string search_start = "x+";
    std::uint64_t search_budget = SearchOptions{}.budget;
    double search_cutoff = SearchOptions{}.rate_cutoff;
    auto *search = app.add_subcommand("search", "Enumerate all successful sequences up to a length");
    add_common(search, search_common);
    search->add_option("--max-len", search_len, "Maximum sequence length");
    search->add_option("--start", search_start, "Central-spin start state");
    search->add_option("--budget", search_budget, "Largest allowed 7^max_len");
    search->add_option("--cutoff", search_cutoff, "Prune branches with success rate below this");

    std::string hist_path;
    bool hist_successful = false;
    bool hist_unique_successful = false;
    auto *histogram = app.add_subcommand("histogram", "Count adjacent action pairs in a records file");
    histogram->add_option("records", hist_path, "Records file from evaluate --records")->required();
    histogram->add_flag("--successful", hist_successful, "Only successful sequences");
    histogram->add_flag("--unique-successful", hist_unique_successful,
                        "Only successful sequences, each distinct sequence once");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*train) {
            return cmd_train(train_common, train_out, train_seed, progress_every, out);
        }
        if (*evaluate) {
            return cmd_evaluate(eval_common, eval_checkpoint, eval_baseline, eval_eps, eval_episodes,
                                eval_start, eval_seed, eval_records, out);
        }
        if (*replay) {
            return cmd_replay(replay_common, replay_sequence_text, replay_start, out);
        }
        if (*search) {
            return cmd_search(search_common, search_len, search_start, search_budget, search_cutoff, out);
        }
        if (*histogram) {
            return cmd_histogram(hist_path, hist_successful || hist_unique_successful,
                                 hist_unique_successful, out);
        }
    } catch (const BudgetExceeded &e) {
        err << "qse: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ConfigError &e) {
        err << "qse: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError &e) {
        err << "qse: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaMismatch &e) {
        err << "qse: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        err << "qse: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "qse: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception &e) {
        err << "qse: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace qse
