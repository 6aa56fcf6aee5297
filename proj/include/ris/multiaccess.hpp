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

#ifndef RIS_MULTIACCESS_HPP
#define RIS_MULTIACCESS_HPP

#include "ris/core_model.hpp"
#include "ris/montecarlo.hpp"
#include "ris/statistics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace ris
{
    enum class Scheme
    {
        noma,
        fdma,
        tdma
    };

    inline constexpr std::array<Scheme, 3> all_schemes{Scheme::noma, Scheme::fdma, Scheme::tdma};

    std::string_view to_string(Scheme scheme) noexcept;
    std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

    struct UserSpec
    {
        double theta_out = 0.0;      ///< user direction seen from the surface, rad
        double rate_threshold = 1.0; ///< SINR threshold tau, linear
        double noma_power = 0.5;     ///< allocation coefficient a in (0, 1]
        double fdma_power = -1.0;    ///< FDMA transmit power P_i; negative selects P_t / q
    };

    /// Surface and direct-link statistics shared by all users.
    ///
    /// The surface is steered with a co-phase gradient towards theta_target. A user at theta
    /// sees per-column amplitude c(theta) = c_ref * g(theta) with the element factor
    /// g(theta) = |sinc(pi (p_x/lambda_c)(sin theta - sin theta_in))| cos theta, and
    /// c_ref = sqrt(K_0 N omega_d / M), so K_0 is the surface-to-direct power ratio of an
    /// observer where g = 1.
    struct ChannelContext
    {
        RisGeometry geom = RisGeometry::half_wavelength(20, 1);
        double theta_in = 0.0;
        double k_0_ratio = 1.0;
        int n = 64;
        double omega_d = 1.0 / 64.0;
        Quantization quantization = Quantization::continuous();

        int m() const noexcept { return geom.m_x(); }
        double c_ref() const;
        double element_gain(double theta_out) const;
        void validate() const;
    };

    struct MultiAccessScenario
    {
        std::vector<UserSpec> users; ///< NOMA decoding order: weakest channel first
        Scheme scheme = Scheme::noma;
        double p_t = 1.0;
        double sigma_sq = 0.01;
        double theta_target = 0.0;
        ChannelContext channel;

        /// Throws InvalidArgument on inconsistent allocations (NOMA: sum a = 1, nonincreasing;
        /// FDMA: sum P_i <= P_t).
        void validate() const;
    };

    /// Per-column phase mismatch of user k against the steering target,
    /// 2 pi (p_x/lambda_c)(sin theta_k - sin theta_target).
    double user_phase_offset(const UserSpec &user, const MultiAccessScenario &scenario);

    /// Rician parameters of user k's joint channel.
    ///
    /// Continuous control: keff_continuous(M, c_k, dphi_k, N, omega_d).
    /// B-bit control with iid quantization errors (s = sinc^2(Delta/2), G = M^2 sinc^2(M dphi_k / 2)):
    ///   K = c_k^2 s G / (M c_k^2 (1 - s) + N omega_d),  Omega_p = c_k^2 (M (1 - s) + s G) + N omega_d.
    RicianParams user_channel_params(const UserSpec &user, const MultiAccessScenario &scenario);

    /// Monte Carlo description of the same channel, for sample_envelope / run_trials.
    ScenarioParams user_scenario(const UserSpec &user, const MultiAccessScenario &scenario);

    /// SINR at user k when decoding message l (0-based, l <= k):
    /// h P_t a_l / (h P_t sum_{p > l} a_p + sigma^2). Throws InvalidArgument when l > k.
    double noma_sinr(std::size_t k, std::size_t l, double h_sq, const MultiAccessScenario &scenario);

    /// Orthogonal access SNR of user i. FDMA: h P_i / (sigma^2 / q); TDMA: h P_t / sigma^2.
    /// Throws InvalidArgument for a NOMA scenario.
    double oma_snr(std::size_t i, double h_sq, const MultiAccessScenario &scenario);

    /// Channel power |h_k|^2 below which user k is in outage.
    ///
    /// FDMA: tau sigma^2 / (q P_i); TDMA: tau sigma^2 / P_t;
    /// NOMA: max_{l <= k} tau_l / (a_l - tau_l sum_{p > l} a_p) * sigma^2 / P_t, since user k must decode
    /// every message l <= k. std::nullopt when some a_l - tau_l sum_{p > l} a_p <= 0 (never decodable).
    std::optional<double> outage_threshold(std::size_t k, const MultiAccessScenario &scenario);

    /// outage_probability(user_channel_params, outage_threshold); 1 when the threshold is infeasible.
    double user_outage(std::size_t k, const MultiAccessScenario &scenario);

    /// Empirical per-user outage from joint decoding events. Each trial draws one channel per user
    /// (independent direct links) and user k fails when any required SINR falls below its threshold.
    std::vector<double> outage_monte_carlo(const MultiAccessScenario &scenario, std::size_t n_trials, std::uint64_t seed);

    /// Per-draw sum rate in bit/s/Hz for the given channel powers.
    /// NOMA message l is sent at log2(1 + min_{k >= l} gamma_{k,l}) so that every user that has to
    /// cancel it can. TDMA and FDMA give each of the q users a 1/q share.
    double sum_rate_draw(Scheme scheme, std::span<const double> h_sq, const MultiAccessScenario &scenario);

    struct SumRatePoint
    {
        double theta_target = 0.0;
        std::array<double, 3> sum_rate{}; ///< indexed like all_schemes
        std::array<std::vector<double>, 3> user_outage;

        double rate(Scheme s) const { return sum_rate[static_cast<std::size_t>(s)]; }
    };

    /// Sweeps the steering angle. At every angle the NOMA order is re-derived: users are sorted by
    /// ascending Omega_p and receive the allocation coefficients in descending order. Rates are
    /// averaged over n_draws channel draws shared by all schemes; draw t at angle i uses
    /// TrialRng(derive_trial_seed(seed, i), t).
    std::vector<SumRatePoint> sum_rate(const MultiAccessScenario &scenario, std::span<const double> theta_targets,
                                       std::size_t n_draws, std::uint64_t seed);

    /// The scenario with users reordered (and allocations reassigned) by ascending Omega_p at its target.
    MultiAccessScenario order_by_channel(const MultiAccessScenario &scenario);
}

#endif
