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

#include "ris/statistics.hpp"
#include "ris/core_model.hpp"
#include "ris/errors.hpp"
#include "ris/special_functions.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

namespace ris
{
    void RicianParams::validate() const
    {
        detail::require(std::isfinite(k_factor) && k_factor >= 0.0, "k_factor", "must be finite and >= 0");
        detail::require(std::isfinite(omega_p) && omega_p > 0.0, "omega_p", "must be finite and > 0");
    }

    SampleMoments sample_moments(std::span<const std::complex<double>> samples)
    {
        detail::require(samples.size() >= 2, "samples", "need at least two samples");
        SampleMoments s;
        s.count = samples.size();
        const double n = static_cast<double>(s.count);
        for (const auto &z : samples)
        {
            s.mean_tc += z.real();
            s.mean_ts += z.imag();
            s.mean_power += std::norm(z);
        }
        s.mean_tc /= n;
        s.mean_ts /= n;
        s.mean_power /= n;
        for (const auto &z : samples)
        {
            const double dc = z.real() - s.mean_tc;
            const double ds = z.imag() - s.mean_ts;
            s.var_tc += dc * dc;
            s.var_ts += ds * ds;
            s.cov += dc * ds;
        }
        s.var_tc /= n - 1.0;
        s.var_ts /= n - 1.0;
        s.cov /= n - 1.0;
        return s;
    }

    double rician_pdf(double x, const RicianParams &params)
    {
        params.validate();
        detail::require(std::isfinite(x), "x", "must be finite");
        if (x <= 0.0)
            return 0.0;
        const double k = params.k_factor;
        const double w = params.omega_p;
        const double z = 2.0 * x * std::sqrt(k * (k + 1.0) / w);
        const double log_pdf = std::log(2.0 * x * (k + 1.0) / w) - k - (k + 1.0) * x * x / w + log_bessel_i0(z);
        return std::exp(log_pdf);
    }

    double rician_cdf(double x, const RicianParams &params)
    {
        params.validate();
        detail::require(std::isfinite(x) && x >= 0.0, "x", "must be finite and >= 0");
        return marcum_q1_complement(std::sqrt(2.0 * params.k_factor),
                                    x * std::sqrt(2.0 * (params.k_factor + 1.0) / params.omega_p));
    }

    RicianParams effective_shape(const EffectiveMoments &moments)
    {
        detail::require(std::isfinite(moments.sigma) && moments.sigma > 0.0, "sigma", "must be > 0");
        detail::require(std::isfinite(moments.xi_sq) && moments.xi_sq >= 0.0, "xi_sq", "must be >= 0");
        return {moments.xi_sq / moments.sigma, moments.xi_sq + moments.sigma};
    }

    double coherence_factor(double delta)
    {
        detail::require(std::isfinite(delta) && delta >= 0.0 && delta <= two_pi, "delta", "must lie in [0, 2 pi]");
        if (delta == two_pi)
            return 0.0;
        const double s = sinc(0.5 * delta);
        return s * s;
    }

    RicianParams keff_continuous(int m, double c_0, double delta_phi, int n, double omega_d)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(n >= 1, "N", "must be >= 1");
        detail::require(std::isfinite(c_0) && c_0 >= 0.0, "c_0", "must be finite and >= 0");
        detail::require(std::isfinite(delta_phi), "delta_phi", "must be finite");
        detail::require(std::isfinite(omega_d) && omega_d > 0.0, "omega_d", "must be > 0");
        const double g = sinc(0.5 * m * delta_phi);
        const double specular = static_cast<double>(m) * m * c_0 * c_0 * g * g;
        const double diffuse = n * omega_d;
        return {specular / diffuse, specular + diffuse};
    }

    double keff_discrete(int m, double delta, double k_0_ratio)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(std::isfinite(k_0_ratio) && k_0_ratio > 0.0, "k_0_ratio", "must be > 0");
        const double s = coherence_factor(delta);
        return m * s / (1.0 - s + 1.0 / k_0_ratio);
    }

    double omega_discrete(int m, double delta, double omega_r, int n, double omega_d)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(n >= 1, "N", "must be >= 1");
        detail::require(std::isfinite(omega_r) && omega_r >= 0.0, "omega_r", "must be >= 0");
        detail::require(std::isfinite(omega_d) && omega_d >= 0.0, "omega_d", "must be >= 0");
        const double s = coherence_factor(delta);
        const double mm = m;
        return omega_r * (mm + (mm * mm - mm) * s) + n * omega_d;
    }

    EffectiveMoments discrete_moments(int m, double delta, double omega_r, int n, double omega_d)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(n >= 1, "N", "must be >= 1");
        const double s = coherence_factor(delta);
        const double mm = m;
        return {mm * mm * omega_r * s, mm * omega_r * (1.0 - s) + n * omega_d};
    }

    double power_scaling(int m, double delta)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        const double s = coherence_factor(delta);
        const double mm = m;
        return s * mm * mm + (1.0 - s) * mm;
    }

    NakagamiParams nakagami_m_general(double mean_tc, double mean_ts, double var_tc, double var_ts, double cov)
    {
        detail::require(std::isfinite(var_tc) && var_tc > 0.0, "var_tc", "must be > 0");
        detail::require(std::isfinite(var_ts) && var_ts > 0.0, "var_ts", "must be > 0");
        detail::require(std::isfinite(cov) && cov * cov < var_tc * var_ts, "cov", "covariance matrix must be positive definite");
        detail::require(std::isfinite(mean_tc) && std::isfinite(mean_ts), "mean", "must be finite");

        const double a_sq = mean_tc * mean_tc + mean_ts * mean_ts;
        const double sigma = var_tc + var_ts;
        const double dv = var_tc - var_ts;
        const double b = std::sqrt(dv * dv + 4.0 * cov * cov);
        const double delta_1 = std::atan2(mean_ts, mean_tc);
        const double delta_2 = 0.5 * std::atan2(2.0 * cov, dv);

        const double omega = sigma + a_sq;
        const double denom = omega * omega + b * b - a_sq * a_sq + 2.0 * a_sq * b * std::cos(2.0 * (delta_1 - delta_2));
        return {omega * omega / denom, omega};
    }

    NakagamiParams nakagami_m_symmetric(const EffectiveMoments &moments)
    {
        detail::require(std::isfinite(moments.sigma) && moments.sigma > 0.0, "sigma", "must be > 0");
        detail::require(std::isfinite(moments.xi_sq) && moments.xi_sq >= 0.0, "xi_sq", "must be >= 0");
        const double omega = moments.sigma + moments.xi_sq;
        return {omega * omega / (omega * omega - moments.xi_sq * moments.xi_sq), omega};
    }

    double outage_probability(const RicianParams &params, double mu)
    {
        params.validate();
        detail::require(!std::isnan(mu) && mu >= 0.0, "mu", "must be >= 0");
        if (mu == 0.0)
            return 0.0;
        if (std::isinf(mu))
            return 1.0;
        if (params.k_factor == 0.0)
            return -std::expm1(-mu / params.omega_p);
        return marcum_q1_complement(std::sqrt(2.0 * params.k_factor),
                                    std::sqrt(2.0 * mu * (params.k_factor + 1.0) / params.omega_p));
    }

    double snr_pdf(double gamma, const RicianParams &params, double noise_n0)
    {
        params.validate();
        detail::require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "must be finite and >= 0");
        detail::require(std::isfinite(noise_n0) && noise_n0 > 0.0, "noise_n0", "must be > 0");
        const double k = params.k_factor;
        const double gbar = params.omega_p / noise_n0;
        const double z = 2.0 * std::sqrt(k * (1.0 + k) * gamma / gbar);
        const double log_pdf = std::log((1.0 + k) / gbar) - k - (1.0 + k) * gamma / gbar + log_bessel_i0(z);
        return std::exp(log_pdf);
    }

    double outage_asymptote(const RicianParams &params, double gamma_th, double gamma_bar)
    {
        params.validate();
        detail::require(std::isfinite(gamma_th) && gamma_th >= 0.0, "gamma_th", "must be finite and >= 0");
        detail::require(std::isfinite(gamma_bar) && gamma_bar > 0.0, "gamma_bar", "must be > 0");
        return (1.0 + params.k_factor) * std::exp(-params.k_factor) * gamma_th / gamma_bar;
    }

    namespace
    {
        // (E R)^2 / E R^2 of a Rician envelope with shape K.
        double magnitude_ratio(double k)
        {
            const double l = (1.0 + k) * bessel_i0_scaled(0.5 * k) + k * bessel_i1_scaled(0.5 * k);
            return 0.25 * pi * l * l / (k + 1.0);
        }
    }

    RicianParams fit_rician(std::span<const double> magnitudes)
    {
        detail::require(magnitudes.size() >= 100, "samples", "need at least 100 samples");
        double m1 = 0.0;
        double m2 = 0.0;
        for (double r : magnitudes)
        {
            detail::require(std::isfinite(r), "samples", "must be finite");
            detail::require(r >= 0.0, "samples", "magnitudes must be >= 0");
            m1 += r;
            m2 += r * r;
        }
        const double n = static_cast<double>(magnitudes.size());
        m1 /= n;
        m2 /= n;
        detail::require(m2 > 0.0, "samples", "all magnitudes are zero");

        const double q = m1 * m1 / m2;
        if (q <= magnitude_ratio(0.0))
            return {0.0, m2};

        // The ratio rises monotonically towards 1; bracket the root by doubling.
        const auto residual = [q](double k)
        { return magnitude_ratio(k) - q; };
        double hi = 1.0;
        while (residual(hi) < 0.0)
        {
            hi *= 2.0;
            if (hi > 1e9)
                return {hi, m2};
        }
        std::uintmax_t iterations = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(residual, 0.0, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
        return {0.5 * (a + b), m2};
    }

    RicianParams estimate_effective_params(const SampleMoments &moments)
    {
        return effective_shape(moments.effective());
    }

    LineFit keff_inverse_line(int m, double delta)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        detail::require(delta < two_pi, "delta", "no finite line at delta = 2 pi");
        const double s = coherence_factor(delta);
        return {1.0 / (m * s), (1.0 - s) / (m * s)};
    }

    LineFit fit_line(std::span<const double> x, std::span<const double> y)
    {
        detail::require(x.size() == y.size(), "y", "size must match x");
        detail::require(x.size() >= 2, "x", "need at least two points");
        const double n = static_cast<double>(x.size());
        double mx = 0.0;
        double my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            mx += x[i];
            my += y[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        detail::require(sxx > 0.0, "x", "need at least two distinct values");
        const double slope = sxy / sxx;
        return {slope, my - slope * mx};
    }
}
