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

#include <iosfwd>

namespace qse {

/// Exit codes of the qse command line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,    // bad arguments, config, input file or checkpoint
    kExitNumeric = 3,  // numerical failure (underflow, divergence, ...)
    kExitBudget = 4,   // exhaustive search larger than the allowed budget
};

/// Entry point behind the `qse` binary. Writes results to `out` and
/// diagnostics to `err`; never calls std::exit.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qse
