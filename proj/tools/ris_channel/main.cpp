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

#include "ris_channel/commands.hpp"

#include "ris/parallel.hpp"

#include <iostream>
#include <map>

#include "CLI11.hpp"

namespace
{
    struct Options
    {
        std::string config;
        std::uint64_t seed = 0;
        std::size_t trials = 0;
        std::string out;
        bool plot = false;
    };

    const std::map<std::string, std::string> descriptions{
        {"pattern", "far-field pattern of a steered surface"},
        {"envelope-dist", "simulated envelope distribution and Rician fit"},
        {"keff-sweep", "fitted shape factor against the power ratio K_0"},
        {"outage", "outage probability against transmit SNR"},
        {"ma-sumrate", "NOMA / FDMA / TDMA sum rate against steering angle"},
    };
}

int main(int argc, char **argv)
{
    CLI::App app{"ris-channel: channel statistics of surface-assisted links"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    std::map<std::string, Options> options;
    std::map<std::string, CLI::App *> subs;
    for (const auto &name : ris_cli::command_names())
    {
        Options &o = options[name];
        CLI::App *sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--config", o.config, "JSON configuration file")->required();
        sub->add_option("--seed", o.seed, "64-bit seed (overrides the file)");
        sub->add_option("--trials", o.trials, "Monte Carlo trials (overrides the file)")->check(CLI::PositiveNumber);
        sub->add_option("--out", o.out, "output path prefix (overrides the file)");
        sub->add_flag("--plot", o.plot, "also write a gnuplot script per CSV");
        subs[name] = sub;
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        // --help and --version report success; every other parse error is a usage error
        return app.exit(e) == 0 ? ris_cli::exit_ok : ris_cli::exit_usage;
    }
    ris::worker_threads() = threads;

    for (const auto &[name, sub] : subs)
    {
        if (!sub->parsed())
            continue;
        const Options &o = options[name];
        ris_cli::Overrides ov;
        if (sub->count("--seed"))
            ov.seed = o.seed;
        if (sub->count("--trials"))
            ov.trials = o.trials;
        if (sub->count("--out"))
            ov.out = o.out;
        return ris_cli::run_cli(name, o.config, ov, o.plot, std::cout, std::cerr);
    }
    return ris_cli::exit_usage;
}
