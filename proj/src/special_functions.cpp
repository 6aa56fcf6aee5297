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

#include "ris/special_functions.hpp"
#include "ris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace ris
{
    namespace
    {
        // Above this argument exp(x) overflows long before I_nu does, so switch to the
        // Hankel expansion of the scaled function.
        constexpr double large_argument = 700.0;

        double bessel_scaled_asymptotic(double nu, double x)
        {
            const double mu = 4.0 * nu * nu;
            double term = 1.0;
            double sum = 1.0;
            for (int k = 1; k < 30; ++k)
            {
                const double odd = 2.0 * k - 1.0;
                term *= -(mu - odd * odd) / (k * 8.0 * x);
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum))
                    break;
            }
            return sum / std::sqrt(2.0 * std::numbers::pi * x);
        }

        // log of the Poisson(lambda) probability mass at k.
        double log_poisson(double lambda, int k)
        {
            if (lambda == 0.0)
                return k == 0 ? 0.0 : -INFINITY;
            return -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
        }

        std::vector<double> poisson_masses(double lambda, int count)
        {
            std::vector<double> p(static_cast<std::size_t>(count));
            for (int k = 0; k < count; ++k)
                p[static_cast<std::size_t>(k)] = std::exp(log_poisson(lambda, k));
            return p;
        }

        struct MarcumPair
        {
            double q;          // Q_1
            double complement; // 1 - Q_1
        };

        MarcumPair marcum_pair(double a, double b)
        {
            detail::require(std::isfinite(a) && a >= 0.0, "a", "must be finite and >= 0");
            detail::require(std::isfinite(b) && b >= 0.0, "b", "must be finite and >= 0");
            if (b == 0.0)
                return {1.0, 0.0};

            const double x = 0.5 * a * a; // mean of K
            const double y = 0.5 * b * b; // mean of J
            const double spread = std::max(x, y);
            const int count = static_cast<int>(spread + 40.0 * std::sqrt(spread) + 64.0);

            const std::vector<double> w = poisson_masses(x, count);
            const std::vector<double> v = poisson_masses(y, count + 1);

            if (y < x + 1.0)
            {
                // 1 - Q_1 = Pr{J > K} = sum_k w_k * Pr{J >= k + 1}
                std::vector<double> tail(v.size() + 1, 0.0);
                for (std::size_t j = v.size(); j-- > 0;)
                    tail[j] = tail[j + 1] + v[j];
                double c = 0.0;
                for (std::size_t k = 0; k < w.size(); ++k)
                    c += w[k] * tail[k + 1];
                c = std::min(c, 1.0);
                return {1.0 - c, c};
            }

            // Q_1 = Pr{J <= K} = sum_k w_k * Pr{J <= k}
            double cdf = 0.0;
            double q = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k)
            {
                cdf += v[k];
                q += w[k] * cdf;
            }
            q = std::min(q, 1.0);
            return {q, 1.0 - q};
        }
    }

    double bessel_i0_scaled(double x)
    {
        x = std::abs(x);
        if (x > large_argument)
            return bessel_scaled_asymptotic(0.0, x);
        return std::cyl_bessel_i(0.0, x) * std::exp(-x);
    }

    double bessel_i1_scaled(double x)
    {
        const double ax = std::abs(x);
        const double r = ax > large_argument ? bessel_scaled_asymptotic(1.0, ax) : std::cyl_bessel_i(1.0, ax) * std::exp(-ax);
        return x < 0.0 ? -r : r;
    }

    double log_bessel_i0(double x)
    {
        x = std::abs(x);
        return x + std::log(bessel_i0_scaled(x));
    }

    double marcum_q1(double a, double b)
    {
        return marcum_pair(a, b).q;
    }

    double marcum_q1_complement(double a, double b)
    {
        return marcum_pair(a, b).complement;
    }
}
