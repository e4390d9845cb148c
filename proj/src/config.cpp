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

#include "qse/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class Field {
   public:
    Field(std::size_t line, std::string name, std::string_view value)
        : line_(line), name_(std::move(name)), value_(value) {
    }

    [[noreturn]] void fail(const std::string &why) const {
        throw ConfigError("line " + std::to_string(line_) + ": " + name_ + ": " + why);
    }

    double real() const {
        return parse_real(value_);
    }

    std::uint64_t integer() const {
        return parse_integer(value_);
    }

    bool boolean() const {
        if (value_ == "true" || value_ == "1" || value_ == "yes") {
            return true;
        }
        if (value_ == "false" || value_ == "0" || value_ == "no") {
            return false;
        }
        fail("expected true or false, got '" + std::string(value_) + "'");
    }

    std::vector<std::size_t> integer_list() const {
        std::vector<std::size_t> out;
        for (const std::string &w : split_words(value_)) {
            out.push_back(static_cast<std::size_t>(parse_integer(w)));
        }
        return out;
    }

    std::string_view text() const {
        return value_;
    }

    double parse_real(std::string_view s) const {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            fail("expected a number, got '" + std::string(s) + "'");
        }
        return v;
    }

    std::uint64_t parse_integer(std::string_view s) const {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            fail("expected a non-negative integer, got '" + std::string(s) + "'");
        }
        return v;
    }

   private:
    std::size_t line_;
    std::string name_;
    std::string_view value_;
};

using Setter = std::function<void(RunConfig &, const Field &)>;

const std::map<std::string, Setter> &setters() {
    static const std::map<std::string, Setter> table = {
        {"model.n_bath",
         [](RunConfig &c, const Field &f) { c.env.model.n_bath = f.integer(); }},
        {"model.couplings",
         [](RunConfig &c, const Field &f) {
             c.env.model.couplings.clear();
             std::string_view rest = f.text();
             while (!rest.empty()) {
                 const auto semi = rest.find(';');
                 const std::string_view item = trim(rest.substr(0, semi));
                 rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
                 if (item.empty()) {
                     continue;
                 }
                 const auto words = split_words(item);
                 if (words.size() != 3) {
                     f.fail("each coupling needs three components (gx gy gz), separated by ';'");
                 }
                 c.env.model.couplings.push_back(
                     {f.parse_real(words[0]), f.parse_real(words[1]), f.parse_real(words[2])});
             }
         }},
        {"model.omega", [](RunConfig &c, const Field &f) { c.env.model.omega = f.real(); }},
        {"model.tau", [](RunConfig &c, const Field &f) { c.env.model.tau = f.real(); }},
        {"model.central_scale",
         [](RunConfig &c, const Field &f) { c.env.model.convention.central_scale = f.real(); }},
        {"model.bath_scale",
         [](RunConfig &c, const Field &f) { c.env.model.convention.bath_scale = f.real(); }},
        {"env.target",
         [](RunConfig &c, const Field &f) {
             try {
                 c.env.target = parse_bell_state(f.text());
             } catch (const ConfigError &e) {
                 f.fail(e.what());
             }
         }},
        {"env.theta", [](RunConfig &c, const Field &f) { c.env.theta = f.real(); }},
        {"env.r_plus", [](RunConfig &c, const Field &f) { c.env.r_plus = f.real(); }},
        {"env.r_minus", [](RunConfig &c, const Field &f) { c.env.r_minus = f.real(); }},
        {"env.r_fatal", [](RunConfig &c, const Field &f) { c.env.r_fatal = f.real(); }},
        {"env.max_steps", [](RunConfig &c, const Field &f) { c.env.max_steps = f.integer(); }},
        {"env.probability_floor",
         [](RunConfig &c, const Field &f) { c.env.probability_floor = f.real(); }},
        {"env.start_mode",
         [](RunConfig &c, const Field &f) {
             if (f.text() == "fixed_xplus") {
                 c.env.start_mode = StartMode::fixed_xplus;
             } else if (f.text() == "random_pure") {
                 c.env.start_mode = StartMode::random_pure;
             } else if (f.text() == "fixed_custom") {
                 c.env.start_mode = StartMode::fixed_custom;
             } else {
                 f.fail("expected fixed_xplus, random_pure or fixed_custom");
             }
         }},
        {"env.start_state",
         [](RunConfig &c, const Field &f) {
             try {
                 c.env.custom_start = parse_start_state(f.text());
             } catch (const ConfigError &e) {
                 f.fail(e.what());
             }
             c.start_state = std::string(f.text());
         }},
        {"env.validate_states",
         [](RunConfig &c, const Field &f) { c.env.validate_states = f.boolean(); }},
        {"agent.algorithm",
         [](RunConfig &c, const Field &f) {
             try {
                 c.agent.algorithm = parse_algorithm(f.text());
             } catch (const ConfigError &e) {
                 f.fail(e.what());
             }
         }},
        {"agent.gamma", [](RunConfig &c, const Field &f) { c.agent.gamma = f.real(); }},
        {"agent.eps_start", [](RunConfig &c, const Field &f) { c.agent.eps_start = f.real(); }},
        {"agent.eps_min", [](RunConfig &c, const Field &f) { c.agent.eps_min = f.real(); }},
        {"agent.eps_decay_steps",
         [](RunConfig &c, const Field &f) { c.agent.eps_decay_steps = f.integer(); }},
        {"agent.training_steps",
         [](RunConfig &c, const Field &f) { c.agent.training_steps = f.integer(); }},
        {"agent.episodes_per_step",
         [](RunConfig &c, const Field &f) { c.agent.episodes_per_step = f.integer(); }},
        {"agent.batch_size", [](RunConfig &c, const Field &f) { c.agent.batch_size = f.integer(); }},
        {"agent.updates_per_step",
         [](RunConfig &c, const Field &f) { c.agent.updates_per_step = f.integer(); }},
        {"agent.replay_capacity",
         [](RunConfig &c, const Field &f) { c.agent.replay_capacity = f.integer(); }},
        {"agent.target_mix", [](RunConfig &c, const Field &f) { c.agent.target_mix = f.real(); }},
        {"agent.learning_rate",
         [](RunConfig &c, const Field &f) { c.agent.learning_rate = f.real(); }},
        {"mlp.hidden", [](RunConfig &c, const Field &f) { c.mlp.hidden = f.integer_list(); }},
        {"mlp.activation",
         [](RunConfig &c, const Field &f) {
             try {
                 c.mlp.activation = parse_activation(f.text());
             } catch (const ConfigError &e) {
                 f.fail(e.what());
             }
         }},
        {"mlp.init_seed", [](RunConfig &c, const Field &f) { c.mlp.init_seed = f.integer(); }},
        {"run.master_seed", [](RunConfig &c, const Field &f) { c.master_seed = f.integer(); }},
        {"run.checkpoint_steps",
         [](RunConfig &c, const Field &f) { c.checkpoint_steps = f.integer_list(); }},
        {"run.output_dir",
         [](RunConfig &c, const Field &f) { c.output_dir = std::string(f.text()); }},
        {"run.workers", [](RunConfig &c, const Field &f) { c.workers = f.integer(); }},
    };
    return table;
}

}  // namespace

QubitState parse_start_state(std::string_view text) {
    const auto words = split_words(text);
    if (words.size() == 3 && words[0] == "bloch") {
        Field f(0, "env.start_state", text);
        return QubitState::from_bloch(f.parse_real(words[1]), f.parse_real(words[2]));
    }
    if (words.size() == 1) {
        return QubitState::from_name(words[0]);
    }
    throw ConfigError("start state must be an axis ket (x+, y-, ...) or 'bloch <theta> <phi>'");
}

void RunConfig::validate() const {
    env.validate();
    agent.validate();
    mlp.validate();
    const std::size_t expected = encoding_length(env.model.dim());
    if (mlp.input_size != expected || mlp.output_size != kNumActions) {
        std::ostringstream msg;
        msg << "mlp: network must map " << expected << " inputs to " << kNumActions << " outputs";
        throw ConfigError(msg.str());
    }
    if (workers == 0) {
        throw ConfigError("run.workers: must be at least 1");
    }
    for (std::size_t s : checkpoint_steps) {
        if (s == 0 || s > agent.training_steps) {
            throw ConfigError("run.checkpoint_steps: step " + std::to_string(s) +
                              " is outside 1..agent.training_steps");
        }
    }
    if (output_dir.empty()) {
        throw ConfigError("run.output_dir: must not be empty");
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        it->second(cfg, Field(line_no, key, value));
    }

    if (!seen.count("env.r_fatal")) {
        cfg.env.r_fatal = -static_cast<double>(cfg.env.max_steps + 1);
    }
    if (!seen.count("model.couplings")) {
        cfg.env.model.couplings.assign(cfg.env.model.n_bath, {1.0, 0.0, 0.0});
    }
    cfg.mlp.input_size = encoding_length(cfg.env.model.dim());
    cfg.mlp.output_size = kNumActions;
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string serialize_config(const RunConfig &c) {
    std::ostringstream o;
    const ModelParams &m = c.env.model;
    o << "[model]\n";
    o << "n_bath = " << m.n_bath << "\n";
    o << "# coupling vectors g_k, relative frequency units\n";
    o << "couplings = ";
    for (std::size_t k = 0; k < m.couplings.size(); ++k) {
        o << (k ? "; " : "") << fmt_double(m.couplings[k][0]) << " "
          << fmt_double(m.couplings[k][1]) << " " << fmt_double(m.couplings[k][2]);
    }
    o << "\n";
    o << "omega = " << fmt_double(m.omega) << "  # relative frequency units\n";
    o << "tau = " << fmt_double(m.tau) << "  # relative time units\n";
    o << "central_scale = " << fmt_double(m.convention.central_scale) << "\n";
    o << "bath_scale = " << fmt_double(m.convention.bath_scale) << "\n";

    const EnvConfig &e = c.env;
    o << "\n[env]\n";
    o << "target = " << to_string(e.target) << "\n";
    o << "theta = " << fmt_double(e.theta) << "\n";
    o << "r_plus = " << fmt_double(e.r_plus) << "\n";
    o << "r_minus = " << fmt_double(e.r_minus) << "\n";
    o << "r_fatal = " << fmt_double(e.r_fatal) << "\n";
    o << "max_steps = " << e.max_steps << "\n";
    o << "probability_floor = " << fmt_double(e.probability_floor) << "\n";
    o << "start_mode = "
      << (e.start_mode == StartMode::fixed_xplus   ? "fixed_xplus"
          : e.start_mode == StartMode::random_pure ? "random_pure"
                                                   : "fixed_custom")
      << "\n";
    o << "start_state = " << c.start_state << "\n";
    o << "validate_states = " << (e.validate_states ? "true" : "false") << "\n";

    const AgentConfig &a = c.agent;
    o << "\n[agent]\n";
    o << "algorithm = " << algorithm_name(a.algorithm) << "\n";
    o << "gamma = " << fmt_double(a.gamma) << "\n";
    o << "eps_start = " << fmt_double(a.eps_start) << "\n";
    o << "eps_min = " << fmt_double(a.eps_min) << "\n";
    o << "eps_decay_steps = " << a.eps_decay_steps << "\n";
    o << "training_steps = " << a.training_steps << "\n";
    o << "episodes_per_step = " << a.episodes_per_step << "\n";
    o << "batch_size = " << a.batch_size << "\n";
    o << "updates_per_step = " << a.updates_per_step << "\n";
    o << "replay_capacity = " << a.replay_capacity << "\n";
    o << "target_mix = " << fmt_double(a.target_mix) << "\n";
    o << "learning_rate = " << fmt_double(a.learning_rate) << "\n";

    o << "\n[mlp]\n";
    o << "hidden =";
    for (std::size_t w : c.mlp.hidden) {
        o << " " << w;
    }
    o << "\n";
    o << "activation = " << activation_name(c.mlp.activation) << "\n";
    o << "init_seed = " << c.mlp.init_seed << "\n";

    o << "\n[run]\n";
    o << "master_seed = " << c.master_seed << "\n";
    o << "checkpoint_steps =";
    for (std::size_t s : c.checkpoint_steps) {
        o << " " << s;
    }
    o << "\n";
    o << "output_dir = " << c.output_dir.string() << "\n";
    o << "workers = " << c.workers << "\n";
    return o.str();
}

std::string config_hash(const RunConfig &cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_config(cfg)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qse
