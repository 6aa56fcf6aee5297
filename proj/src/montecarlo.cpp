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

#include "ris/montecarlo.hpp"
#include "ris/core_model.hpp"
#include "ris/csv.hpp"
#include "ris/errors.hpp"
#include "ris/parallel.hpp"

#include <cmath>
#include <ostream>

namespace ris
{
    namespace
    {
        constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

        std::uint64_t splitmix64(std::uint64_t z) noexcept
        {
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }
    }

    ScenarioParams ScenarioParams::from_k0(int m, int n, double k_0_ratio, double omega_d, double delta, double delta_phi)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(n >= 1, "N", "must be >= 1");
        detail::require(std::isfinite(k_0_ratio) && k_0_ratio > 0.0, "k_0_ratio", "must be > 0");
        ScenarioParams p;
        p.m = m;
        p.n = n;
        p.omega_d = omega_d;
        p.omega_r = k_0_ratio * n * omega_d / m;
        p.delta = delta;
        p.delta_phi = delta_phi;
        p.validate();
        return p;
    }

    void ScenarioParams::validate() const
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(n >= 1, "N", "must be >= 1");
        detail::require(std::isfinite(omega_r) && omega_r > 0.0, "omega_r", "must be > 0");
        detail::require(std::isfinite(omega_d) && omega_d > 0.0, "omega_d", "must be > 0");
        detail::require(std::isfinite(delta) && delta >= 0.0 && delta <= two_pi, "delta", "must lie in [0, 2 pi]");
        detail::require(std::isfinite(delta_phi), "delta_phi", "must be finite");
    }

    std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept
    {
        return splitmix64(splitmix64(seed + golden_gamma) ^ (trial * golden_gamma + 1));
    }

    double TrialRng::phase()
    {
        return pi - two_pi * uniform();
    }

    std::complex<double> sample_direct(int n, double omega_d, TrialRng &rng)
    {
        detail::require(n >= 1, "N", "must be >= 1");
        const double b = std::sqrt(omega_d);
        std::complex<double> acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += std::polar(b, rng.phase());
        return acc;
    }

    std::complex<double> sample_specular_discrete(int m, double omega_r, double delta, TrialRng &rng)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(delta >= 0.0 && delta <= two_pi, "delta", "must lie in [0, 2 pi]");
        const double c = std::sqrt(omega_r);
        if (delta == 0.0)
            return {m * c, 0.0};
        std::complex<double> acc = 0.0;
        for (int i = 0; i < m; ++i)
            acc += std::polar(c, delta * (rng.uniform() - 0.5));
        return acc;
    }

    std::complex<double> sample_specular_offset(int m, double omega_r, double delta, double delta_phi, TrialRng &rng)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(delta >= 0.0 && delta <= two_pi, "delta", "must lie in [0, 2 pi]");
        const double c = std::sqrt(omega_r);
        const double centre = 0.5 * (m - 1);
        std::complex<double> acc = 0.0;
        for (int i = 0; i < m; ++i)
        {
            const double err = delta == 0.0 ? 0.0 : delta * (rng.uniform() - 0.5);
            acc += std::polar(c, (i - centre) * delta_phi + err);
        }
        return acc;
    }

    EnvelopeSample sample_envelope(const ScenarioParams &params, TrialRng &rng)
    {
        EnvelopeSample s;
        if (params.delta_phi == 0.0)
            s.specular = sample_specular_discrete(params.m, params.omega_r, params.delta, rng);
        else if (params.delta == 0.0)
            s.specular = params.m * std::sqrt(params.omega_r) * sinc(0.5 * params.m * params.delta_phi);
        else
            s.specular = sample_specular_offset(params.m, params.omega_r, params.delta, params.delta_phi, rng);
        s.direct = sample_direct(params.n, params.omega_d, rng);
        return s;
    }

    std::vector<EnvelopeSample> run_trials(const ScenarioParams &params, std::size_t n_trials, std::uint64_t seed)
    {
        params.validate();
        detail::require(n_trials >= 1, "n_trials", "must be >= 1");
        std::vector<EnvelopeSample> out(n_trials);
        parallel_for(n_trials, [&](std::size_t k)
                     {
            TrialRng rng(seed, k);
            out[k] = sample_envelope(params, rng); });
        return out;
    }

    RicianParams analytic_params(const ScenarioParams &params)
    {
        params.validate();
        const double s = coherence_factor(params.delta);
        if (params.delta_phi == 0.0)
            return {keff_discrete(params.m, params.delta, params.k_0_ratio()),
                    omega_discrete(params.m, params.delta, params.omega_r, params.n, params.omega_d)};
        const double array = sinc(0.5 * params.m * params.delta_phi);
        const double gain = static_cast<double>(params.m) * params.m * array * array;
        const double diffuse = params.m * params.omega_r * (1.0 - s) + params.n * params.omega_d;
        return {params.omega_r * s * gain / diffuse, params.omega_r * s * gain + diffuse};
    }

    std::vector<std::complex<double>> envelopes(std::span<const EnvelopeSample> samples)
    {
        std::vector<std::complex<double>> z;
        z.reserve(samples.size());
        for (const auto &s : samples)
            z.push_back(s.value());
        return z;
    }

    std::vector<double> magnitudes(std::span<const EnvelopeSample> samples)
    {
        std::vector<double> r;
        r.reserve(samples.size());
        for (const auto &s : samples)
            r.push_back(s.magnitude());
        return r;
    }

    void write_samples_csv(std::ostream &os, std::span<const EnvelopeSample> samples)
    {
        csv::write_row(os, {"trial", "t_c", "t_s", "magnitude", "magnitude_sq"});
        for (std::size_t k = 0; k < samples.size(); ++k)
        {
            const auto &s = samples[k];
            csv::write_row(os, {csv::number(k), csv::number(s.t_c()), csv::number(s.t_s()),
                                csv::number(s.magnitude()), csv::number(s.magnitude_sq())});
        }
    }
}
