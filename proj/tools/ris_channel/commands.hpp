// SPDX-License-Identifier: Apache-2.0
//
// ris-channel: physics-based channel modelling for reconfigurable surfaces
// Copyright (C) 2026 The ris-channel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIS_CHANNEL_COMMANDS_HPP
#define RIS_CHANNEL_COMMANDS_HPP

#include "ris_channel/config.hpp"

#include <string>
#include <vector>

namespace ris_cli
{
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_config = 2,
        exit_infeasible = 3,
        exit_io = 4
    };

    struct OutputFile
    {
        std::string path;
        std::string content;
    };

    struct CommandResult
    {
        std::vector<OutputFile> files;
        std::string summary; ///< one line per headline number, for the terminal
    };

    /// Runs a validated experiment entirely in memory. With plot set, every CSV gets a
    /// gnuplot script next to it (same stem, extension .gp).
    CommandResult run_experiment(const Experiment &ex, bool plot);

    /// Writes every file to a temporary sibling first and renames only when all writes
    /// succeeded, so a failure leaves no partial outputs. Throws std::ios_base::failure.
    void write_outputs(const std::vector<OutputFile> &files);

    /// Parses, validates, runs and writes. Returns the process exit code and reports
    /// diagnostics on err.
    int run_cli(const std::string &command, const std::string &config_path, const Overrides &overrides,
                bool plot, std::ostream &out, std::ostream &err);
}

#endif
