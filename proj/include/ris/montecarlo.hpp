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

#ifndef RIS_MONTECARLO_HPP
#define RIS_MONTECARLO_HPP

#include "ris/statistics.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace ris
{
    /// Power parameters of the joint channel: M surface paths plus N direct paths.
    struct ScenarioParams
    {
        int m = 50;             ///< surface column count M
        int n = 64;             ///< direct path count N
        double omega_r = 1.0;   ///< E[c_m^2] per surface path
        double omega_d = 1.0;   ///< E[b_n^2] per direct path
        double delta = 0.0;     ///< quantization step, rad; 0 continuous, 2 pi random phase
        double delta_phi = 0.0; ///< off-target phase increment per column, rad

        /// Sets omega_r so that M omega_r / (N omega_d) equals k_0_ratio.
        static ScenarioParams from_k0(int m, int n, double k_0_ratio, double omega_d, double delta, double delta_phi = 0.0);

        /// K_0 = M omega_r / (N omega_d).
        double k_0_ratio() const noexcept { return m * omega_r / (n * omega_d); }

        void validate() const;
    };

    /// One complex envelope draw, kept split into its surface and direct parts.
    struct EnvelopeSample
    {
        std::complex<double> specular;
        std::complex<double> direct;

        std::complex<double> value() const noexcept { return specular + direct; }
        double t_c() const noexcept { return value().real(); }
        double t_s() const noexcept { return value().imag(); }
        double magnitude() const noexcept { return std::abs(value()); }
        double magnitude_sq() const noexcept { return std::norm(value()); }
    };

    /// Seed of trial k: two rounds of the splitmix64 finalizer over seed and k.
    /// Stable across releases; changing it changes every published artifact.
    std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

    /// Generator owned by exactly one trial.
    class TrialRng
    {
    public:
        TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(derive_trial_seed(seed, trial)) {}

        /// Uniform on [0, 1) with 53 random bits.
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        /// Uniform on (-pi, pi].
        double phase();

        /// Standard normal deviate.
        double normal() { return normal_(engine_); }

        std::mt19937_64 &engine() noexcept { return engine_; }

    private:
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_;
    };

    /// sum_{n=1}^{N} sqrt(omega_d) exp(j theta_n), theta_n iid uniform on (-pi, pi].
    std::complex<double> sample_direct(int n, double omega_d, TrialRng &rng);

    /// sum_{m=1}^{M} sqrt(omega_r) exp(j theta_m), theta_m iid uniform on (-delta/2, delta/2).
    /// delta = 0 returns M sqrt(omega_r) without touching the generator.
    std::complex<double> sample_specular_discrete(int m, double omega_r, double delta, TrialRng &rng);

    /// Off-target discrete steering: sum_m sqrt(omega_r) exp(j (m delta_phi + theta_m)), m centred on
    /// the array middle so that delta = 0 gives the real value sqrt(omega_r) sin(M dphi/2)/sin(dphi/2).
    std::complex<double> sample_specular_offset(int m, double omega_r, double delta, double delta_phi, TrialRng &rng);

    /// Specular part plus direct part.
    /// delta = 0 with delta_phi != 0 uses the continuous closed form M sqrt(omega_r) sinc(M delta_phi / 2);
    /// delta > 0 with delta_phi != 0 uses sample_specular_offset.
    EnvelopeSample sample_envelope(const ScenarioParams &params, TrialRng &rng);

    /// n_trials independent envelopes. Trial k draws from TrialRng(seed, k) only,
    /// so the result does not depend on the number of worker threads.
    std::vector<EnvelopeSample> run_trials(const ScenarioParams &params, std::size_t n_trials, std::uint64_t seed);

    /// Closed-form Rician parameters of the channel drawn by sample_envelope, s = sinc^2(delta/2):
    ///   delta_phi = 0: keff_discrete and omega_discrete;
    ///   otherwise, with G = M^2 sinc^2(M delta_phi / 2):
    ///     K = omega_r s G / (M omega_r (1 - s) + N omega_d),  Omega_p = omega_r (M (1 - s) + s G) + N omega_d,
    ///   which reduces to keff_continuous for delta = 0.
    RicianParams analytic_params(const ScenarioParams &params);

    std::vector<std::complex<double>> envelopes(std::span<const EnvelopeSample> samples);

    std::vector<double> magnitudes(std::span<const EnvelopeSample> samples);

    /// Columns trial, t_c, t_s, magnitude, magnitude_sq.
    void write_samples_csv(std::ostream &os, std::span<const EnvelopeSample> samples);
}

#endif
