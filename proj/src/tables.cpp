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

#include "qse/tables.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) {
            return out;
        }
        pos = next + 1;
    }
}

double parse_double(std::string_view s, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'", line);
    }
    return v;
}

std::vector<double> parse_list(std::string_view s, std::size_t line) {
    std::vector<double> out;
    if (s == "-") {
        return out;
    }
    for (std::string_view item : split(s, ',')) {
        out.push_back(parse_double(item, line));
    }
    return out;
}

Outcome parse_outcome(std::string_view s, std::size_t line) {
    for (Outcome o : {Outcome::success, Outcome::continuing, Outcome::timeout, Outcome::fatal}) {
        if (outcome_name(o) == s) {
            return o;
        }
    }
    throw ParseError("line " + std::to_string(line) + ": unknown outcome '" + std::string(s) + "'", line);
}

}  // namespace

void write_header(std::ostream &out, std::string_view kind, const RunStamp *stamp) {
    out << "# qse " << kind << "\n";
    if (stamp) {
        out << "# config_hash=" << stamp->config_hash << " master_seed=" << stamp->master_seed << "\n";
    }
}

void write_training_row(std::ostream &out, const TrainingLogRow &row) {
    out << row.step << '\t' << num(row.epsilon) << '\t' << num(row.avg_return) << '\t'
        << num(row.success_fraction) << '\t' << num(row.loss_mean) << '\n';
}

void write_training_log(std::ostream &out, const TrainingLog &log, const RunStamp &stamp) {
    write_header(out, "learning_curve", &stamp);
    out << "step\tepsilon\tavg_return\tsuccess_fraction\tloss_mean\n";
    for (const TrainingLogRow &row : log.rows) {
        write_training_row(out, row);
    }
}

void write_records(std::ostream &out, std::span<const SequenceRecord> records, const RunStamp *stamp) {
    write_header(out, "records v1", stamp);
    out << "start\toutcome\ttotal_reward\tsuccess_rate\tfinal_fidelity\tactions\tstep_probs\tstep_fidelities\n";
    for (const SequenceRecord &r : records) {
        out << r.start << '\t' << outcome_name(r.outcome) << '\t' << num(r.total_reward) << '\t'
            << num(r.success_rate) << '\t' << num(r.final_fidelity) << '\t';
        out << (r.actions.empty() ? "-" : format_actions(r.actions)) << '\t';
        if (r.per_step.empty()) {
            out << "-\t-\n";
            continue;
        }
        for (std::size_t i = 0; i < r.per_step.size(); ++i) {
            out << (i ? "," : "") << num(r.per_step[i].success_prob);
        }
        out << '\t';
        for (std::size_t i = 0; i < r.per_step.size(); ++i) {
            out << (i ? "," : "") << num(r.per_step[i].fidelity);
        }
        out << '\n';
    }
}

std::vector<SequenceRecord> read_records(std::istream &in, RunStamp *stamp) {
    std::vector<SequenceRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            if (line_no == 1 && line != "# qse records v1") {
                throw ParseError("line 1: not a records file", 1);
            }
            if (stamp && line.rfind("# config_hash=", 0) == 0) {
                std::istringstream fields(line.substr(14));
                std::string seed;
                fields >> stamp->config_hash >> seed;
                if (seed.rfind("master_seed=", 0) == 0) {
                    std::from_chars(seed.data() + 12, seed.data() + seed.size(), stamp->master_seed);
                }
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("start\t", 0) == 0) {
                continue;
            }
        }
        const auto cols = split(line, '\t');
        if (cols.size() != 8) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 8 columns, got " +
                                 std::to_string(cols.size()),
                             line_no);
        }
        SequenceRecord r;
        r.start = std::string(cols[0]);
        r.outcome = parse_outcome(cols[1], line_no);
        r.total_reward = parse_double(cols[2], line_no);
        r.success_rate = parse_double(cols[3], line_no);
        r.final_fidelity = parse_double(cols[4], line_no);
        if (cols[5] != "-") {
            std::istringstream words{std::string(cols[5])};
            std::string token;
            while (words >> token) {
                Action a{};
                if (!parse_action(token, a)) {
                    throw ParseError("line " + std::to_string(line_no) + ": unknown action '" + token + "'",
                                     line_no);
                }
                r.actions.push_back(a);
            }
        }
        const auto probs = parse_list(cols[6], line_no);
        const auto fids = parse_list(cols[7], line_no);
        if (probs.size() != fids.size() || (!probs.empty() && probs.size() != r.actions.size())) {
            throw ParseError("line " + std::to_string(line_no) + ": per-step lists do not match the actions",
                             line_no);
        }
        for (std::size_t i = 0; i < probs.size(); ++i) {
            StepDiagnostics d;
            d.success_prob = probs[i];
            d.fidelity = fids[i];
            r.per_step.push_back(d);
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_diagnostics(std::ostream &out, std::span<const DiagnosticRow> rows, const RunStamp *stamp) {
    write_header(out, "diagnostics", stamp);
    out << "step\taction\tpurity\tfidelity\ttrace_distance\tsuccess_prob\n";
    for (const DiagnosticRow &r : rows) {
        out << r.step << '\t' << action_name(r.action) << '\t' << short_num(r.purity) << '\t'
            << short_num(r.fidelity) << '\t' << short_num(r.trace_distance) << '\t'
            << short_num(r.success_prob) << '\n';
    }
}

void write_histogram(std::ostream &out, const ActionCombinationHistogram &hist, const RunStamp *stamp) {
    write_header(out, "histogram", stamp);
    out << "first\tsecond\tcount\n";
    for (const auto &[pair, count] : hist) {
        out << action_name(pair.first) << '\t' << action_name(pair.second) << '\t' << count << '\n';
    }
}

void write_search(std::ostream &out, std::span<const SequenceRecord> records, const RunStamp *stamp) {
    write_header(out, "search", stamp);
    out << "length\tsuccess_rate\tfinal_fidelity\tnotation\tactions\n";
    for (const SequenceRecord &r : records) {
        out << r.actions.size() << '\t' << short_num(r.success_rate) << '\t' << short_num(r.final_fidelity)
            << '\t' << format_table_notation(r.actions) << '\t' << format_actions(r.actions) << '\n';
    }
}

}  // namespace qse
