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

#ifndef RIS_STATISTICS_HPP
#define RIS_STATISTICS_HPP

#include <complex>
#include <cstddef>
#include <span>

namespace ris
{
    /// Rician envelope law with shape K (specular to scattered power) and scale Omega_p = E[R^2].
    struct RicianParams
    {
        double k_factor = 0.0;
        double omega_p = 1.0;

        void validate() const;
    };

    /// Mean-vector length and total variance of the complex envelope T_c + j T_s.
    struct EffectiveMoments
    {
        double xi_sq = 0.0; ///< (E T_c)^2 + (E T_s)^2
        double sigma = 1.0; ///< Var T_c + Var T_s
    };

    struct NakagamiParams
    {
        double m = 1.0;
        double spread = 1.0; ///< E[R^2]
    };

    /// First and second moments of complex samples.
    struct SampleMoments
    {
        std::size_t count = 0;
        double mean_tc = 0.0;
        double mean_ts = 0.0;
        double var_tc = 0.0;
        double var_ts = 0.0;
        double cov = 0.0;
        double mean_power = 0.0;

        EffectiveMoments effective() const { return {mean_tc * mean_tc + mean_ts * mean_ts, var_tc + var_ts}; }
    };

    /// Unbiased sample moments. Needs at least two samples.
    SampleMoments sample_moments(std::span<const std::complex<double>> samples);

    /// (2x(K+1)/W) exp(-K - (K+1)x^2/W) I_0(2x sqrt(K(K+1)/W)), W = Omega_p.
    /// Evaluated in the log domain; stays finite for K in the thousands.
    double rician_pdf(double x, const RicianParams &params);

    /// Rician CDF, 1 - Q_1(sqrt(2K), x sqrt(2(K+1)/Omega_p)).
    double rician_cdf(double x, const RicianParams &params);

    /// K = xi_sq / sigma, Omega_p = xi_sq + sigma.
    RicianParams effective_shape(const EffectiveMoments &moments);

    /// sinc^2(delta/2), the fraction of element power that stays coherent under uniform
    /// phase errors of width delta. Exactly 0 at delta = 2 pi.
    double coherence_factor(double delta);

    /// Continuous steering observed off target by delta_phi per column:
    /// K = M^2 c_0^2 sinc^2(M dphi / 2) / (N omega_d), Omega_p = M^2 c_0^2 sinc^2(M dphi / 2) + N omega_d.
    RicianParams keff_continuous(int m, double c_0, double delta_phi, int n, double omega_d);

    /// K = M s / (1 - s + 1/K_0) with s = coherence_factor(delta).
    double keff_discrete(int m, double delta, double k_0_ratio);

    /// Omega_p = omega_r (M + (M^2 - M) s) + N omega_d.
    double omega_discrete(int m, double delta, double omega_r, int n, double omega_d);

    /// Xi^2 = M^2 omega_r s and sigma = M omega_r (1 - s) + N omega_d for iid uniform phase errors.
    EffectiveMoments discrete_moments(int m, double delta, double omega_r, int n, double omega_d);

    /// s M^2 + (1 - s) M.
    double power_scaling(int m, double delta);

    /// Nakagami m = Omega^2 / Var(R^2) of a Gaussian complex envelope with arbitrary means,
    /// unequal variances and correlation:
    ///
    ///   m = (sigma + A^2)^2 / [(sigma + A^2)^2 + B^2 - A^4 + 2 A^2 B cos 2(delta_1 - delta_2)]
    ///
    /// A^2 = mean_tc^2 + mean_ts^2, sigma = var_tc + var_ts, B^2 = (var_tc - var_ts)^2 + 4 cov^2,
    /// delta_1 = atan2(mean_ts, mean_tc), delta_2 = atan2(2 cov, var_tc - var_ts) / 2.
    /// Throws InvalidArgument when a variance is not positive or the covariance matrix is singular.
    NakagamiParams nakagami_m_general(double mean_tc, double mean_ts, double var_tc, double var_ts, double cov);

    /// Circular case: m = (sigma + xi^2)^2 / ((sigma + xi^2)^2 - xi^4), sigma the total variance.
    NakagamiParams nakagami_m_symmetric(const EffectiveMoments &moments);

    /// Probability that R^2 < mu: 1 - Q_1(sqrt(2K), sqrt(2 mu (K+1) / Omega_p)).
    double outage_probability(const RicianParams &params, double mu);

    /// Density of gamma = R^2 / N_0 (non-central chi-square with two degrees of freedom):
    /// (1+K) e^{-K} / gbar * exp(-(1+K) gamma / gbar) * I_0(2 sqrt(K (1+K) gamma / gbar)), gbar = Omega_p / N_0.
    double snr_pdf(double gamma, const RicianParams &params, double noise_n0);

    /// Small-threshold expansion of the outage, (1+K) e^{-K} gamma_th / gamma_bar. Diversity order one.
    double outage_asymptote(const RicianParams &params, double gamma_th, double gamma_bar);

    /// Method-of-moments Rician fit from envelope magnitudes.
    /// Omega_p = mean(R^2); K solves (E R)^2 / E R^2 = (pi/4) L^2 / (K+1) with
    /// L = e^{-K/2} [(1+K) I_0(K/2) + K I_1(K/2)]. Ratios at or below pi/4 give K = 0.
    /// Needs at least 100 finite, non-negative samples.
    RicianParams fit_rician(std::span<const double> magnitudes);

    /// Effective Rician parameters from the complex-envelope moments (mean vector and total variance).
    RicianParams estimate_effective_params(const SampleMoments &moments);

    struct LineFit
    {
        double slope = 0.0;
        double intercept = 0.0;
    };

    /// 1/K = slope / K_0 + intercept with slope = 1/(M s), intercept = (1 - s)/(M s).
    /// Throws InvalidArgument at delta = 2 pi, where no finite line exists.
    LineFit keff_inverse_line(int m, double delta);

    /// Ordinary least squares y = slope x + intercept over at least two distinct x.
    LineFit fit_line(std::span<const double> x, std::span<const double> y);
}

#endif
