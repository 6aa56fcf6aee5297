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

#include "ris/multiaccess.hpp"
#include "ris/errors.hpp"
#include "ris/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ris
{
    std::string_view to_string(Scheme scheme) noexcept
    {
        switch (scheme)
        {
        case Scheme::noma:
            return "noma";
        case Scheme::fdma:
            return "fdma";
        case Scheme::tdma:
            return "tdma";
        }
        return "unknown";
    }

    std::optional<Scheme> parse_scheme(std::string_view name) noexcept
    {
        for (Scheme s : all_schemes)
            if (to_string(s) == name)
                return s;
        return std::nullopt;
    }

    // ------------------------------------------------------------------------

    double ChannelContext::c_ref() const
    {
        return std::sqrt(k_0_ratio * n * omega_d / m());
    }

    double ChannelContext::element_gain(double theta_out) const
    {
        const double x = pi * (geom.p_x() / geom.lambda_c()) * (std::sin(theta_out) - std::sin(theta_in));
        return std::abs(sinc(x)) * std::cos(theta_out);
    }

    void ChannelContext::validate() const
    {
        detail::require(std::isfinite(theta_in) && std::abs(theta_in) < pi / 2, "theta_in", "must lie in (-90, 90) degrees");
        detail::require(std::isfinite(k_0_ratio) && k_0_ratio > 0.0, "k_0_ratio", "must be > 0");
        detail::require(n >= 1, "N", "must be >= 1");
        detail::require(std::isfinite(omega_d) && omega_d > 0.0, "omega_d", "must be > 0");
    }

    void MultiAccessScenario::validate() const
    {
        channel.validate();
        detail::require(!users.empty(), "users", "need at least one user");
        detail::require(std::isfinite(p_t) && p_t > 0.0, "p_t", "must be > 0");
        detail::require(std::isfinite(sigma_sq) && sigma_sq > 0.0, "sigma_sq", "must be > 0");
        detail::require(std::isfinite(theta_target) && std::abs(theta_target) < pi / 2, "theta_target", "must lie in (-90, 90) degrees");
        for (const auto &u : users)
        {
            detail::require(std::isfinite(u.theta_out) && std::abs(u.theta_out) < pi / 2, "users.theta_out", "must lie in (-90, 90) degrees");
            detail::require(std::isfinite(u.rate_threshold) && u.rate_threshold >= 0.0, "users.rate_threshold", "must be >= 0");
        }
        if (scheme == Scheme::noma)
        {
            double total = 0.0;
            for (std::size_t i = 0; i < users.size(); ++i)
            {
                const double a = users[i].noma_power;
                detail::require(std::isfinite(a) && a > 0.0 && a <= 1.0, "users.noma_power", "must lie in (0, 1]");
                if (i > 0)
                    detail::require(a <= users[i - 1].noma_power, "users.noma_power", "must be nonincreasing in decoding order");
                total += a;
            }
            detail::require(std::abs(total - 1.0) <= 1e-9, "users.noma_power", "must sum to 1");
        }
        if (scheme == Scheme::fdma)
        {
            double total = 0.0;
            for (const auto &u : users)
                total += u.fdma_power < 0.0 ? p_t / static_cast<double>(users.size()) : u.fdma_power;
            detail::require(total <= p_t * (1.0 + 1e-12), "users.fdma_power", "sum must not exceed p_t");
        }
    }

    double user_phase_offset(const UserSpec &user, const MultiAccessScenario &scenario)
    {
        const auto &g = scenario.channel.geom;
        return two_pi * (g.p_x() / g.lambda_c()) * (std::sin(user.theta_out) - std::sin(scenario.theta_target));
    }

    RicianParams user_channel_params(const UserSpec &user, const MultiAccessScenario &scenario)
    {
        const auto &ch = scenario.channel;
        ch.validate();
        const int m = ch.m();
        const double c = ch.c_ref() * ch.element_gain(user.theta_out);
        const double dphi = user_phase_offset(user, scenario);
        if (ch.quantization.is_continuous())
            return keff_continuous(m, c, dphi, ch.n, ch.omega_d);

        return analytic_params(user_scenario(user, scenario));
    }

    ScenarioParams user_scenario(const UserSpec &user, const MultiAccessScenario &scenario)
    {
        const auto &ch = scenario.channel;
        ScenarioParams p;
        p.m = ch.m();
        p.n = ch.n;
        const double c = ch.c_ref() * ch.element_gain(user.theta_out);
        // A user on a pattern null still needs a valid (tiny) surface power.
        p.omega_r = std::max(c * c, 1e-300);
        p.omega_d = ch.omega_d;
        p.delta = ch.quantization.step();
        p.delta_phi = user_phase_offset(user, scenario);
        return p;
    }

    double noma_sinr(std::size_t k, std::size_t l, double h_sq, const MultiAccessScenario &scenario)
    {
        const auto &users = scenario.users;
        detail::require(k < users.size(), "k", "user index out of range");
        detail::require(l <= k, "l", "user k can only decode messages l <= k");
        detail::require(std::isfinite(h_sq) && h_sq >= 0.0, "h_sq", "must be finite and >= 0");
        double tail = 0.0;
        for (std::size_t p = l + 1; p < users.size(); ++p)
            tail += users[p].noma_power;
        const double rx = h_sq * scenario.p_t;
        return rx * users[l].noma_power / (rx * tail + scenario.sigma_sq);
    }

    namespace
    {
        double fdma_power(std::size_t i, const MultiAccessScenario &scenario)
        {
            const double p = scenario.users[i].fdma_power;
            return p < 0.0 ? scenario.p_t / static_cast<double>(scenario.users.size()) : p;
        }

        // min over k >= l of gamma_{k,l}; the SINR is increasing in h, so the weakest required decoder binds.
        double noma_message_sinr(std::size_t l, std::span<const double> h_sq, const MultiAccessScenario &scenario)
        {
            double worst = noma_sinr(l, l, h_sq[l], scenario);
            for (std::size_t k = l + 1; k < h_sq.size(); ++k)
                worst = std::min(worst, noma_sinr(k, l, h_sq[k], scenario));
            return worst;
        }
    }

    double oma_snr(std::size_t i, double h_sq, const MultiAccessScenario &scenario)
    {
        detail::require(i < scenario.users.size(), "i", "user index out of range");
        detail::require(std::isfinite(h_sq) && h_sq >= 0.0, "h_sq", "must be finite and >= 0");
        const double q = static_cast<double>(scenario.users.size());
        switch (scenario.scheme)
        {
        case Scheme::fdma:
            return h_sq * fdma_power(i, scenario) / (scenario.sigma_sq / q);
        case Scheme::tdma:
            return h_sq * scenario.p_t / scenario.sigma_sq;
        case Scheme::noma:
            break;
        }
        throw InvalidArgument("scheme", "oma_snr needs FDMA or TDMA");
    }

    std::optional<double> outage_threshold(std::size_t k, const MultiAccessScenario &scenario)
    {
        const auto &users = scenario.users;
        detail::require(k < users.size(), "k", "user index out of range");
        const double q = static_cast<double>(users.size());
        const double noise_ratio = scenario.sigma_sq / scenario.p_t;
        switch (scenario.scheme)
        {
        case Scheme::fdma:
        {
            const double p = fdma_power(k, scenario);
            if (p <= 0.0)
                return users[k].rate_threshold > 0.0 ? std::nullopt : std::optional<double>(0.0);
            return users[k].rate_threshold * scenario.sigma_sq / (q * p);
        }
        case Scheme::tdma:
            return users[k].rate_threshold * noise_ratio;
        case Scheme::noma:
            break;
        }

        double mu = 0.0;
        for (std::size_t l = 0; l <= k; ++l)
        {
            double tail = 0.0;
            for (std::size_t p = l + 1; p < users.size(); ++p)
                tail += users[p].noma_power;
            const double tau = users[l].rate_threshold;
            const double denom = users[l].noma_power - tau * tail;
            if (denom <= 0.0)
                return std::nullopt;
            mu = std::max(mu, tau / denom * noise_ratio);
        }
        return mu;
    }

    double user_outage(std::size_t k, const MultiAccessScenario &scenario)
    {
        scenario.validate();
        const auto mu = outage_threshold(k, scenario);
        if (!mu)
            return 1.0;
        return outage_probability(user_channel_params(scenario.users[k], scenario), *mu);
    }

    namespace
    {
        std::vector<ScenarioParams> user_scenarios(const MultiAccessScenario &scenario)
        {
            std::vector<ScenarioParams> out;
            for (const auto &u : scenario.users)
                out.push_back(user_scenario(u, scenario));
            return out;
        }

        bool user_fails(std::size_t k, std::span<const double> h_sq, const MultiAccessScenario &scenario)
        {
            const auto &users = scenario.users;
            if (scenario.scheme != Scheme::noma)
                return oma_snr(k, h_sq[k], scenario) < users[k].rate_threshold;
            for (std::size_t l = 0; l <= k; ++l)
                if (!(noma_sinr(k, l, h_sq[k], scenario) >= users[l].rate_threshold))
                    return true;
            return false;
        }
    }

    std::vector<double> outage_monte_carlo(const MultiAccessScenario &scenario, std::size_t n_trials, std::uint64_t seed)
    {
        scenario.validate();
        detail::require(n_trials >= 1, "n_trials", "must be >= 1");
        const std::size_t q = scenario.users.size();
        const auto params = user_scenarios(scenario);

        std::vector<unsigned char> fails(n_trials * q, 0);
        parallel_for(n_trials, [&](std::size_t t)
                     {
            TrialRng rng(seed, t);
            std::vector<double> h(q);
            for (std::size_t k = 0; k < q; ++k)
                h[k] = sample_envelope(params[k], rng).magnitude_sq();
            for (std::size_t k = 0; k < q; ++k)
                fails[t * q + k] = user_fails(k, h, scenario) ? 1 : 0; });

        std::vector<double> rate(q, 0.0);
        for (std::size_t t = 0; t < n_trials; ++t)
            for (std::size_t k = 0; k < q; ++k)
                rate[k] += fails[t * q + k];
        for (double &r : rate)
            r /= static_cast<double>(n_trials);
        return rate;
    }

    double sum_rate_draw(Scheme scheme, std::span<const double> h_sq, const MultiAccessScenario &scenario)
    {
        const std::size_t q = scenario.users.size();
        detail::require(h_sq.size() == q, "h_sq", "need one channel power per user");
        MultiAccessScenario s = scenario;
        s.scheme = scheme;
        double total = 0.0;
        for (std::size_t i = 0; i < q; ++i)
        {
            if (scheme == Scheme::noma)
                total += std::log2(1.0 + noma_message_sinr(i, h_sq, s));
            else
                total += std::log2(1.0 + oma_snr(i, h_sq[i], s)) / static_cast<double>(q);
        }
        return total;
    }

    namespace
    {
        // Indices of users sorted by ascending Omega_p (stable).
        std::vector<std::size_t> channel_order(const MultiAccessScenario &scenario)
        {
            std::vector<double> omega;
            for (const auto &u : scenario.users)
                omega.push_back(user_channel_params(u, scenario).omega_p);
            std::vector<std::size_t> idx(scenario.users.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b)
                             { return omega[a] < omega[b]; });
            return idx;
        }

        MultiAccessScenario reorder(const MultiAccessScenario &scenario, const std::vector<std::size_t> &order)
        {
            std::vector<double> powers;
            for (const auto &u : scenario.users)
                powers.push_back(u.noma_power);
            std::sort(powers.begin(), powers.end(), std::greater<>());
            MultiAccessScenario out = scenario;
            for (std::size_t i = 0; i < order.size(); ++i)
            {
                out.users[i] = scenario.users[order[i]];
                out.users[i].noma_power = powers[i];
            }
            return out;
        }
    }

    MultiAccessScenario order_by_channel(const MultiAccessScenario &scenario)
    {
        return reorder(scenario, channel_order(scenario));
    }

    std::vector<SumRatePoint> sum_rate(const MultiAccessScenario &scenario, std::span<const double> theta_targets,
                                       std::size_t n_draws, std::uint64_t seed)
    {
        detail::require(scenario.users.size() >= 2, "users", "sum rate needs at least two users");
        detail::require(n_draws >= 1, "n_draws", "must be >= 1");
        detail::require(!theta_targets.empty(), "theta_targets", "need at least one angle");
        const std::size_t q = scenario.users.size();

        std::vector<SumRatePoint> points(theta_targets.size());
        for (std::size_t i = 0; i < theta_targets.size(); ++i)
        {
            MultiAccessScenario at = scenario;
            at.theta_target = theta_targets[i];
            at.scheme = Scheme::noma;
            const auto order = channel_order(at);
            at = reorder(at, order);
            at.validate();

            const auto params = user_scenarios(at);
            const std::uint64_t angle_seed = derive_trial_seed(seed, i);
            std::vector<std::array<double, 3>> per_draw(n_draws);
            parallel_for(n_draws, [&](std::size_t t)
                         {
                TrialRng rng(angle_seed, t);
                std::vector<double> h(q);
                for (std::size_t k = 0; k < q; ++k)
                    h[k] = sample_envelope(params[k], rng).magnitude_sq();
                for (std::size_t s = 0; s < all_schemes.size(); ++s)
                    per_draw[t][s] = sum_rate_draw(all_schemes[s], h, at); });

            SumRatePoint &pt = points[i];
            pt.theta_target = theta_targets[i];
            for (const auto &d : per_draw)
                for (std::size_t s = 0; s < 3; ++s)
                    pt.sum_rate[s] += d[s];
            for (double &r : pt.sum_rate)
                r /= static_cast<double>(n_draws);

            for (std::size_t s = 0; s < all_schemes.size(); ++s)
            {
                MultiAccessScenario sc = at;
                sc.scheme = all_schemes[s];
                pt.user_outage[s].assign(q, 0.0);
                for (std::size_t k = 0; k < q; ++k)
                    pt.user_outage[s][order[k]] = user_outage(k, sc);
            }
        }
        return points;
    }
}
