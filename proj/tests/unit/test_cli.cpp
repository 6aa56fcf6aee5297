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

#include "catch_amalgamated.hpp"

#include "ris/core_model.hpp"
#include "ris_channel/commands.hpp"
#include "ris_channel/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using Catch::Approx;
using namespace ris_cli;
namespace fs = std::filesystem;

namespace
{
    struct Row
    {
        std::vector<std::string> cells;
        double num(std::size_t i) const { return std::stod(cells.at(i)); }
    };

    // Data rows of a CSV text, skipping '#' metadata and the header.
    std::vector<Row> data_rows(const std::string &text, std::string *header = nullptr)
    {
        std::istringstream is(text);
        std::string line;
        std::vector<Row> rows;
        bool seen_header = false;
        while (std::getline(is, line))
        {
            if (line.empty() || line[0] == '#')
                continue;
            if (!seen_header)
            {
                seen_header = true;
                if (header)
                    *header = line;
                continue;
            }
            Row r;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                r.cells.push_back(cell);
            rows.push_back(r);
        }
        return rows;
    }

    const OutputFile &find_file(const CommandResult &res, const std::string &suffix)
    {
        for (const auto &f : res.files)
            if (f.path.size() >= suffix.size() && f.path.compare(f.path.size() - suffix.size(), suffix.size(), suffix) == 0)
                return f;
        throw std::runtime_error("no output ending in " + suffix);
    }

    CommandResult run(const std::string &command, const json &config, bool plot = false)
    {
        return run_experiment(load_experiment(command, config, {}), plot);
    }

    // Fresh scratch directory per test case.
    fs::path scratch(const std::string &name)
    {
        const fs::path dir = fs::temp_directory_path() / ("ris_cli_test_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    void write_text(const fs::path &p, const std::string &text)
    {
        std::ofstream(p) << text;
    }

    std::string read_text(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    // Returns the process exit code of a shell command.
    int shell(const std::string &cmd)
    {
        const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
}

TEST_CASE("defaults are resolved and echoed")
{
    const auto ex = load_experiment("envelope-dist", json::object(), {});
    CHECK(ex.run.seed == 1);
    CHECK(ex.run.n_trials == 10000);
    CHECK(ex.resolved["scenario"]["M"] == 50);
    CHECK(ex.resolved["scenario"]["N"] == 64);
    CHECK(ex.resolved["scenario"]["phase_control"] == "discrete");
    CHECK(ex.envelope->params.k_0_ratio() == Approx(3.0));
    CHECK(ex.envelope->control.delta() == Approx(ris::pi));

    Overrides ov;
    ov.seed = 99;
    ov.trials = 123;
    ov.out = "x/y";
    const auto o = load_experiment("pattern", json::object(), ov);
    CHECK(o.run.seed == 99);
    CHECK(o.run.n_trials == 123);
    CHECK(o.run.output_prefix == "x/y");
    CHECK(o.resolved["seed"] == 99);
}

TEST_CASE("validation errors name the offending field")
{
    const auto field_of = [](const std::string &command, const json &cfg)
    {
        try
        {
            load_experiment(command, cfg, {});
        }
        catch (const ConfigError &e)
        {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of("envelope-dist", json::parse(R"({"scenario": {"k_0_ratio": -1}})")) == "scenario.k_0_ratio");
    CHECK(field_of("envelope-dist", json::parse(R"({"scenario": {"M": "many"}})")) == "scenario.M");
    CHECK(field_of("envelope-dist", json::parse(R"({"scenario": {"colour": 1}})")) == "scenario.colour");
    CHECK(field_of("pattern", json::parse(R"({"pattern": {"theta_target_deg": 95}})")) == "pattern.theta_target_deg");
    CHECK(field_of("pattern", json::parse(R"({"geometry": {"m_x": 0}})")) == "geometry.m_x");
    CHECK(field_of("keff-sweep", json::parse(R"({"scenario": {"phase_control": "random"}})")) == "scenario.phase_control");
    CHECK(field_of("ma-sumrate", json::parse(R"({"multiaccess": {"scheme": "cdma"}})")) == "multiaccess.scheme");
    CHECK(field_of("ma-sumrate", json::parse(R"({"multiaccess": {"users": [{"theta_deg": 15, "noma_power": 0.7},
                                                                          {"theta_deg": 33, "noma_power": 0.7}]}})"))
              .rfind("multiaccess", 0) == 0);
    CHECK(field_of("outage", json::parse(R"({"n_trials": 0})")) == "n_trials");
    CHECK(field_of("bogus", json::object()) == "command");
}

TEST_CASE("undecodable NOMA allocations are infeasible")
{
    // tau = 2 leaves a_weak - tau a_strong = 0.6 - 0.8 < 0 whichever user is weaker
    const auto cfg = json::parse(R"({"multiaccess": {"users": [{"theta_deg": 15, "sinr_threshold": 2, "noma_power": 0.6},
                                                              {"theta_deg": 33, "sinr_threshold": 2, "noma_power": 0.4}]}})");
    CHECK_THROWS_AS(load_experiment("ma-sumrate", cfg, {}), InfeasibleConfig);
}

TEST_CASE("pattern command peaks at the bin nearest the target")
{
    // exact-bin grid: u = 0.1 p, so 30 degrees falls on bin 5 and the element factor cannot
    // move the peak by a whole bin
    const auto res = run("pattern", json::parse(R"({"pattern": {"theta_target_deg": 30, "padding_p": 20}})"));
    const auto rows = data_rows(find_file(res, "_pattern.csv").content);
    REQUIRE_FALSE(rows.empty());
    std::size_t peak = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].num(6) > rows[peak].num(6))
            peak = i;
    double best = 1e9;
    std::size_t nearest = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const double signed_theta = std::abs(rows[i].num(3)) > 90 ? -rows[i].num(2) : rows[i].num(2);
        if (std::abs(signed_theta - 30.0) < best)
        {
            best = std::abs(signed_theta - 30.0);
            nearest = i;
        }
    }
    CHECK(peak == nearest);

    const auto flat = run("pattern", json::parse(R"({"pattern": {"phase_config": "uniform"}})"));
    const auto frows = data_rows(find_file(flat, "_pattern.csv").content);
    std::size_t fpeak = 0;
    for (std::size_t i = 0; i < frows.size(); ++i)
        if (frows[i].num(6) > frows[fpeak].num(6))
            fpeak = i;
    CHECK(frows[fpeak].num(2) == 0.0);
}

TEST_CASE("exact-bin pattern is a subset of the padded pattern")
{
    const auto padded = run("pattern", json::parse(R"({"geometry": {"m_x": 16}, "pattern": {"theta_in_deg": 10, "padding_p": 512}})"));
    const auto exact = run("pattern", json::parse(R"({"geometry": {"m_x": 16}, "pattern": {"theta_in_deg": 10, "padding_p": 16}})"));
    std::map<int, Row> by_p;
    for (const auto &r : data_rows(find_file(padded, "_pattern.csv").content))
        by_p[std::stoi(r.cells[0])] = r;
    const auto rows = data_rows(find_file(exact, "_pattern.csv").content);
    REQUIRE(rows.size() >= 8);
    for (const auto &r : rows)
    {
        const int p = std::stoi(r.cells[0]);
        REQUIRE(by_p.count(32 * p));
        const auto &q = by_p[32 * p];
        CHECK(q.num(2) == Approx(r.num(2)).margin(1e-10));
        const std::complex<double> a(r.num(4), r.num(5)), b(q.num(4), q.num(5));
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("envelope-dist writes samples, fit and histogram")
{
    const auto cfg = json::parse(R"({"n_trials": 2000, "scenario": {"phase_control": "random"}})");
    const auto res = run("envelope-dist", cfg, true);
    std::string header;
    const auto samples = data_rows(find_file(res, "_samples.csv").content, &header);
    CHECK(header == "trial,t_c,t_s,magnitude,magnitude_sq");
    CHECK(samples.size() == 2000);

    const auto fit = data_rows(find_file(res, "_fit.csv").content, &header);
    CHECK(header == "estimator,k_factor,omega_p,nakagami_m");
    REQUIRE(fit.size() == 3);
    CHECK(fit[0].cells[0] == "magnitude_moments");
    CHECK(fit[2].cells[0] == "closed_form");
    CHECK(fit[2].num(1) == 0.0);
    CHECK(fit[2].num(2) == Approx(50 * 3.0 / 50 + 1.0));

    CHECK_NOTHROW(find_file(res, "_hist.gp"));
    const auto &text = find_file(res, "_fit.csv").content;
    CHECK(text.rfind("# ris-channel envelope-dist\n# seed=1\n# config={", 0) == 0);
}

TEST_CASE("keff-sweep with continuous control has a zero intercept")
{
    const auto cfg = json::parse(R"({"n_trials": 20000,
                                     "scenario": {"phase_control": "continuous"},
                                     "sweep": {"M": [10, 40], "k_0_ratio": [1, 2, 5, 10]}})");
    const auto res = run("keff-sweep", cfg);
    const auto fit = data_rows(find_file(res, "_keff_fit.csv").content);
    REQUIRE(fit.size() == 2);
    for (const auto &r : fit)
    {
        const double m = r.num(0);
        INFO("M = " << m);
        CHECK(r.num(4) == 0.0);
        CHECK(r.num(3) == Approx(1.0 / m));
        // intercept noise scales like the slope times the estimator error
        CHECK(std::abs(r.num(2)) < 0.05 * r.num(3));
    }
}

TEST_CASE("outage command writes every curve and SNR point")
{
    const auto cfg = json::parse(R"({"n_trials": 5000, "outage": {"snr_db": [5, 15, 25]}})");
    const auto res = run("outage", cfg);
    std::string header;
    const auto rows = data_rows(find_file(res, "_outage.csv").content, &header);
    CHECK(header == "snr_db,curve,M,phase_control,mc_outage,analytic_outage,mc_std_error");
    CHECK(rows.size() == 15);
    for (const auto &r : rows)
    {
        CHECK(r.num(4) >= 0.0);
        CHECK(r.num(5) <= 1.0);
    }
}

TEST_CASE("NOMA outage pair: the targeted good user has the smaller outage")
{
    json cfg;
    std::ifstream(std::string(RIS_EXAMPLE_CONFIGS) + "/outage_noma.json") >> cfg;
    cfg["n_trials"] = 20000;
    const auto res = run("outage", cfg);
    std::map<std::string, std::vector<double>> by_label;
    for (const auto &r : data_rows(find_file(res, "_outage.csv").content))
        if (r.cells[1].rfind("noma_user_", 0) == 0)
            by_label[r.cells[1]].push_back(r.num(5));
    REQUIRE(by_label.size() == 2);
    const auto &targeted = by_label.at("noma_user_15deg");
    const auto &other = by_label.at("noma_user_33deg");
    for (std::size_t i = 0; i < targeted.size(); ++i)
        CHECK(targeted[i] < other[i]);
}

TEST_CASE("ma-sumrate lists every scheme at every angle")
{
    const auto cfg = json::parse(R"({"n_trials": 500, "multiaccess": {"sweep_start_deg": 10, "sweep_stop_deg": 20, "sweep_step_deg": 5}})");
    const auto res = run("ma-sumrate", cfg);
    std::string header;
    const auto rows = data_rows(find_file(res, "_sumrate.csv").content, &header);
    CHECK(header == "theta_target_deg,scheme,sum_rate_bps_hz,user1_outage,user2_outage");
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].num(0) == 10.0);
    CHECK(rows[8].num(0) == 20.0);
}

TEST_CASE("symmetric two-user geometry gives a mirrored sum-rate curve")
{
    const auto cfg = json::parse(R"({"n_trials": 4000, "multiaccess": {
        "users": [{"theta_deg": -20, "noma_power": 0.6}, {"theta_deg": 20, "noma_power": 0.4}],
        "sweep_start_deg": -30, "sweep_stop_deg": 30, "sweep_step_deg": 10}})");
    const auto rows = data_rows(find_file(run("ma-sumrate", cfg), "_sumrate.csv").content);
    std::map<std::pair<double, std::string>, double> rate;
    for (const auto &r : rows)
        rate[{r.num(0), r.cells[1]}] = r.num(2);
    for (const std::string s : {"noma", "fdma", "tdma"})
    {
        const double left = rate[{-20.0, s}], right = rate[{20.0, s}];
        INFO(s);
        CHECK(left == Approx(right).epsilon(0.03));
        CHECK(left >= rate[{0.0, s}]);
    }
}

TEST_CASE("reruns are byte identical")
{
    const auto cfg = json::parse(R"({"n_trials": 3000, "seed": 17, "scenario": {"M": 20}})");
    const auto a = run("envelope-dist", cfg);
    const auto b = run("envelope-dist", cfg);
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i)
        CHECK(a.files[i].content == b.files[i].content);
}

TEST_CASE("run_cli exit codes and no partial outputs")
{
    const auto dir = scratch("exit_codes");
    std::ostringstream out, err;

    write_text(dir / "bad.json", R"({"output_prefix": ")" + (dir / "bad").string() + R"(", "scenario": {"M": -3}})");
    CHECK(run_cli("envelope-dist", (dir / "bad.json").string(), {}, false, out, err) == exit_config);
    CHECK(err.str().find("scenario.M") != std::string::npos);

    write_text(dir / "broken.json", "{ not json");
    CHECK(run_cli("envelope-dist", (dir / "broken.json").string(), {}, false, out, err) == exit_config);

    CHECK(run_cli("envelope-dist", (dir / "missing.json").string(), {}, false, out, err) == exit_io);

    write_text(dir / "infeasible.json", R"({"output_prefix": ")" + (dir / "inf").string() +
                                            R"(", "multiaccess": {"users": [{"theta_deg": 15, "sinr_threshold": 2, "noma_power": 0.6},
                                                                            {"theta_deg": 33, "sinr_threshold": 2, "noma_power": 0.4}]}})");
    CHECK(run_cli("ma-sumrate", (dir / "infeasible.json").string(), {}, false, out, err) == exit_infeasible);

    // only the config files remain
    std::size_t count = 0;
    for ([[maybe_unused]] const auto &e : fs::directory_iterator(dir))
        ++count;
    CHECK(count == 3);

    write_text(dir / "ok.json", R"({"n_trials": 200, "output_prefix": ")" + (dir / "sub" / "env").string() + R"("})");
    CHECK(run_cli("envelope-dist", (dir / "ok.json").string(), {}, true, out, err) == exit_ok);
    CHECK(fs::exists(dir / "sub" / "env_samples.csv"));
    CHECK(fs::exists(dir / "sub" / "env_hist.gp"));
    const auto first = read_text(dir / "sub" / "env_fit.csv");
    CHECK(run_cli("envelope-dist", (dir / "ok.json").string(), {}, true, out, err) == exit_ok);
    CHECK(read_text(dir / "sub" / "env_fit.csv") == first);

    // an unwritable prefix fails without leaving temporaries
    write_text(dir / "blocked", "file, not a directory");
    write_text(dir / "io.json", R"({"n_trials": 200, "output_prefix": ")" + (dir / "blocked" / "env").string() + R"("})");
    CHECK(run_cli("envelope-dist", (dir / "io.json").string(), {}, false, out, err) == exit_io);
}

TEST_CASE("example configurations load")
{
    const std::map<std::string, std::string> command_of{
        {"pattern.json", "pattern"},
        {"envelope_dist.json", "envelope-dist"},
        {"envelope_random.json", "envelope-dist"},
        {"keff_sweep.json", "keff-sweep"},
        {"outage.json", "outage"},
        {"outage_noma.json", "outage"},
        {"ma_sumrate.json", "ma-sumrate"},
    };
    std::size_t seen = 0;
    for (const auto &entry : fs::directory_iterator(RIS_EXAMPLE_CONFIGS))
    {
        const auto name = entry.path().filename().string();
        INFO(name);
        REQUIRE(command_of.count(name));
        CHECK_NOTHROW(load_experiment(command_of.at(name), read_config_file(entry.path().string()), {}));
        ++seen;
    }
    CHECK(seen == command_of.size());
}

TEST_CASE("executable parses the documented options")
{
    const std::string exe = RIS_CHANNEL_EXE;
    const auto dir = scratch("exe");
    CHECK(shell(exe + " --help") == 0);
    CHECK(shell(exe) == exit_usage);
    CHECK(shell(exe + " pattern") == exit_usage);
    CHECK(shell(exe + " pattern --config " + (dir / "nope.json").string()) == exit_io);

    write_text(dir / "p.json", "{}");
    const std::string base = exe + " pattern --config " + (dir / "p.json").string() + " --out " + (dir / "run").string();
    CHECK(shell(base + " --seed 5 --trials 10 --plot") == 0);
    CHECK(fs::exists(dir / "run_pattern.csv"));
    CHECK(fs::exists(dir / "run_pattern.gp"));
    CHECK(read_text(dir / "run_pattern.csv").find("# seed=5") != std::string::npos);
    CHECK(shell(base + " --trials 0") == exit_usage);

    write_text(dir / "bad.json", R"({"pattern": {"padding_p": 3}})");
    CHECK(shell(exe + " pattern --config " + (dir / "bad.json").string()) == exit_config);
}
