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

#ifndef RIS_CHANNEL_CONFIG_HPP
#define RIS_CHANNEL_CONFIG_HPP

#include "ris/core_model.hpp"
#include "ris/montecarlo.hpp"
#include "ris/multiaccess.hpp"
#include "ris/radiation.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ris_cli
{
    using json = nlohmann::json;

    /// A configuration entry is missing, mistyped or out of range. field() is the dotted key path.
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &field, const std::string &what)
            : std::runtime_error(field + ": " + what), field_(field) {}
        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    /// A configuration that is valid but cannot be served, e.g. an undecodable NOMA allocation.
    class InfeasibleConfig : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Command-line values that take precedence over the file.
    struct Overrides
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<std::string> out;
    };

    /// Fields shared by every experiment.
    struct RunSettings
    {
        std::uint64_t seed = 1;
        std::size_t n_trials = 10000;
        std::string output_prefix;
    };

    /// How the surface phases are controlled.
    struct PhaseControl
    {
        ris::Quantization quantization = ris::Quantization::continuous();
        bool random = false; ///< phases uniformly random (delta = 2 pi)

        double delta() const { return random ? ris::two_pi : quantization.step(); }
        std::string label() const;
    };

    struct PatternJob
    {
        ris::RisGeometry geom = ris::RisGeometry::half_wavelength(1, 1);
        double theta_in = 0.0;
        double theta_target = 0.0;
        bool co_phase = true;
        ris::Quantization quantization = ris::Quantization::continuous();
        ris::PatternPadding padding;
    };

    struct EnvelopeJob
    {
        ris::ScenarioParams params;
        PhaseControl control;
        double k_0_ratio = 3.0;
        int histogram_bins = 60;
    };

    struct KeffJob
    {
        std::vector<int> m_values;
        std::vector<double> k_0_values;
        int n = 64;
        double omega_d = 1.0 / 64.0;
        PhaseControl control;
    };

    struct OutageCurve
    {
        int m = 10;
        PhaseControl control;
    };

    struct OutageJob
    {
        std::vector<double> snr_db;
        double gamma_min_db = 10.0;
        double k_0_ratio = 1.0;
        int n = 64;
        std::vector<OutageCurve> curves;
        std::optional<ris::MultiAccessScenario> noma; ///< optional NOMA pair, P_t / sigma^2 follows snr_db
    };

    struct SumRateJob
    {
        ris::MultiAccessScenario scenario;
        std::vector<double> theta_targets; ///< rad
    };

    /// Parsed and validated configuration plus its fully resolved JSON echo
    /// (defaults filled in, command-line overrides applied).
    struct Experiment
    {
        std::string command;
        RunSettings run;
        json resolved;
        std::optional<PatternJob> pattern;
        std::optional<EnvelopeJob> envelope;
        std::optional<KeffJob> keff;
        std::optional<OutageJob> outage;
        std::optional<SumRateJob> sumrate;
    };

    inline const std::vector<std::string> &command_names()
    {
        static const std::vector<std::string> names{"pattern", "envelope-dist", "keff-sweep", "outage", "ma-sumrate"};
        return names;
    }

    /// Validates the whole configuration for the given command before anything is computed.
    /// Throws ConfigError (naming the field) or InfeasibleConfig.
    Experiment load_experiment(const std::string &command, const json &config, const Overrides &overrides);

    /// Reads and parses a JSON file. Throws std::ios_base::failure when unreadable and
    /// ConfigError when the text is not valid JSON.
    json read_config_file(const std::string &path);
}

#endif
