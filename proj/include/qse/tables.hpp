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

// Tab-separated text outputs. Every file starts with "# qse <kind>" and,
// where a run produced it, a "# config_hash=... master_seed=..." line.
// Layouts are documented in docs/formats.md.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qse/dqn.hpp"
#include "qse/sequences.hpp"

namespace qse {

struct RunStamp {
    std::string config_hash;
    std::uint64_t master_seed = 0;
};

void write_header(std::ostream &out, std::string_view kind, const RunStamp *stamp = nullptr);

/// Columns: step epsilon avg_return success_fraction loss_mean.
void write_training_log(std::ostream &out, const TrainingLog &log, const RunStamp &stamp);
void write_training_row(std::ostream &out, const TrainingLogRow &row);

/// One sequence per line: start outcome total_reward success_rate
/// final_fidelity actions step_probs step_fidelities. Empty lists are "-".
void write_records(std::ostream &out, std::span<const SequenceRecord> records,
                   const RunStamp *stamp = nullptr);
/// Throws ParseError with the 1-based line number as position. If `stamp` is
/// given it receives the file's config_hash/master_seed line, when present.
std::vector<SequenceRecord> read_records(std::istream &in, RunStamp *stamp = nullptr);

/// Columns: step action purity fidelity trace_distance success_prob.
void write_diagnostics(std::ostream &out, std::span<const DiagnosticRow> rows,
                       const RunStamp *stamp = nullptr);

/// Columns: first second count, in map order.
void write_histogram(std::ostream &out, const ActionCombinationHistogram &hist,
                     const RunStamp *stamp = nullptr);

/// Columns: length success_rate final_fidelity notation actions.
void write_search(std::ostream &out, std::span<const SequenceRecord> records,
                  const RunStamp *stamp = nullptr);

}  // namespace qse
