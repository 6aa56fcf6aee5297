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

#include "ris/core_model.hpp"
#include "ris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ris
{
    double sinc(double x)
    {
        if (std::abs(x) < 1e-8)
            return 1.0 - x * x / 6.0;
        return std::sin(x) / x;
    }

    double wrap_two_pi(double angle)
    {
        double r = std::fmod(angle, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi) // -tiny + 2pi rounds up to 2pi
            r = 0.0;
        return r;
    }

    double wrap_pi(double angle)
    {
        double r = wrap_two_pi(angle);
        return r > pi ? r - two_pi : r;
    }

    // ------------------------------------------------------------------------

    RisGeometry::RisGeometry(int m_x, int m_y, double p_x, double p_y, double lambda_c)
        : m_x_(m_x), m_y_(m_y), p_x_(p_x), p_y_(p_y), lambda_c_(lambda_c)
    {
        detail::require(m_x >= 1, "m_x", "must be >= 1");
        detail::require(m_y >= 1, "m_y", "must be >= 1");
        detail::require(std::isfinite(p_x) && p_x > 0.0, "p_x", "must be finite and > 0");
        detail::require(std::isfinite(p_y) && p_y > 0.0, "p_y", "must be finite and > 0");
        detail::require(std::isfinite(lambda_c) && lambda_c > 0.0, "lambda_c", "must be finite and > 0");
    }

    RisGeometry RisGeometry::half_wavelength(int m_x, int m_y, double lambda_c)
    {
        return RisGeometry(m_x, m_y, 0.5 * lambda_c, 0.5 * lambda_c, lambda_c);
    }

    double RisGeometry::column_phase_gradient(double theta_in, double theta_out) const
    {
        return two_pi * (p_x_ / lambda_c_) * (std::sin(theta_out) - std::sin(theta_in));
    }

    void LinkGeometry::validate() const
    {
        detail::require(std::isfinite(theta_in) && theta_in >= 0.0 && theta_in < pi / 2, "theta_in", "must lie in [0, pi/2)");
        detail::require(std::isfinite(theta_out) && std::abs(theta_out) <= pi / 2, "theta_out", "must lie in [-pi/2, pi/2]");
        detail::require(std::isfinite(phi_in), "phi_in", "must be finite");
        detail::require(std::isfinite(phi_out), "phi_out", "must be finite");
        detail::require(std::isfinite(d_1) && d_1 > 0.0, "d_1", "must be finite and > 0");
        detail::require(std::isfinite(d_2) && d_2 > 0.0, "d_2", "must be finite and > 0");
    }

    double MobilityParams::doppler_angular_frequency(double lambda_c, double arrival_angle) const
    {
        return two_pi * speed / lambda_c * std::cos(direction - arrival_angle);
    }

    void MobilityParams::validate() const
    {
        detail::require(std::isfinite(speed) && speed >= 0.0, "speed", "must be finite and >= 0");
    }

    // ------------------------------------------------------------------------

    ReflectionCoefficient::ReflectionCoefficient(std::complex<double> value) : value_(value)
    {
        detail::require(std::isfinite(value.real()) && std::isfinite(value.imag()), "reflection_coefficient", "must be finite");
    }

    ReflectionCoefficient ReflectionCoefficient::from_polar(double amplitude, double phase)
    {
        detail::require(amplitude >= 0.0, "amplitude", "must be >= 0");
        return ReflectionCoefficient(std::polar(amplitude, phase));
    }

    double ReflectionCoefficient::phase() const noexcept
    {
        return wrap_two_pi(std::arg(value_));
    }

    ReflectionCoefficient reflection_coefficient(std::complex<double> z_l, double z_0)
    {
        detail::require(std::isfinite(z_0), "z_0", "must be finite");
        if (std::isinf(z_l.real()) || std::isinf(z_l.imag()))
            return ReflectionCoefficient({1.0, 0.0});

        const std::complex<double> den = z_l + z_0;
        const double scale = std::max({std::abs(z_l), std::abs(z_0), 1.0});
        if (std::abs(den) <= 8.0 * std::numeric_limits<double>::epsilon() * scale)
            throw DegenerateImpedance("reflection_coefficient: z_l + z_0 vanishes");
        return ReflectionCoefficient((z_l - z_0) / den);
    }

    // ------------------------------------------------------------------------

    Quantization Quantization::discrete(int bits)
    {
        detail::require(bits >= 1 && bits <= 30, "bits", "must lie in [1, 30]");
        return Quantization(bits);
    }

    double Quantization::step() const noexcept
    {
        return is_continuous() ? 0.0 : two_pi / static_cast<double>(1L << bits_);
    }

    double Quantization::apply(double phase) const
    {
        return is_continuous() ? wrap_two_pi(phase) : quantize_phase(phase, bits_);
    }

    double quantize_phase(double phi_desired, int bits)
    {
        detail::require(bits >= 1 && bits <= 30, "bits", "must lie in [1, 30]");
        const long levels = 1L << bits;
        const double step = two_pi / static_cast<double>(levels);

        const double q = wrap_two_pi(phi_desired) / step;
        long t = static_cast<long>(std::floor(q));
        if (q - static_cast<double>(t) > 0.5)
            ++t;
        return static_cast<double>(t % levels) * step;
    }

    PhaseConfig::PhaseConfig(Eigen::MatrixXd phases, Quantization quantization)
        : phases_(std::move(phases)), quantization_(quantization)
    {
        detail::require(phases_.rows() >= 1 && phases_.cols() >= 1, "phases", "must be non-empty");
        for (Eigen::Index i = 0; i < phases_.size(); ++i)
        {
            const double v = phases_.data()[i];
            detail::require(std::isfinite(v) && v >= 0.0 && v < two_pi, "phases", "entries must lie in [0, 2pi)");
            if (quantization_.is_discrete())
            {
                const double t = v / quantization_.step();
                detail::require(std::abs(t - std::round(t)) < 1e-9, "phases", "entries must be integer multiples of the quantization step");
            }
        }
    }

    PhaseConfig PhaseConfig::uniform(const RisGeometry &geom, Quantization quantization)
    {
        return PhaseConfig(Eigen::MatrixXd::Zero(geom.m_x(), geom.m_y()), quantization);
    }

    bool PhaseConfig::matches(const RisGeometry &geom) const noexcept
    {
        return m_x() == geom.m_x() && m_y() == geom.m_y();
    }

    bool PhaseConfig::is_row_constant() const noexcept
    {
        for (int n = 1; n < m_y(); ++n)
            if (phases_.col(n) != phases_.col(0))
                return false;
        return true;
    }

    PhaseConfig co_phase_config(const RisGeometry &geom, double theta_in, double theta_target, Quantization quantization)
    {
        const double eps = geom.column_phase_gradient(theta_in, theta_target);
        Eigen::MatrixXd phases(geom.m_x(), geom.m_y());
        for (int m = 0; m < geom.m_x(); ++m)
            phases.row(m).setConstant(quantization.apply(eps * m));
        return PhaseConfig(std::move(phases), quantization);
    }

    double residual_phase(const PhaseConfig &config, const RisGeometry &geom, double theta_in, double theta_out, int m)
    {
        detail::require(m >= 0 && m < config.m_x(), "m", "column index out of range");
        const double eps = geom.column_phase_gradient(theta_in, theta_out);
        return wrap_pi(config(m, 0) - eps * m);
    }

    std::vector<double> residual_phases(const PhaseConfig &config, const RisGeometry &geom, double theta_in, double theta_out)
    {
        std::vector<double> out(static_cast<std::size_t>(config.m_x()));
        for (int m = 0; m < config.m_x(); ++m)
            out[static_cast<std::size_t>(m)] = residual_phase(config, geom, theta_in, theta_out, m);
        return out;
    }

    Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi)
    {
        detail::require(bins >= 1, "bins", "must be >= 1");
        detail::require(hi > lo, "hi", "must exceed lo");
        Histogram h{lo, hi, std::vector<std::size_t>(bins, 0)};
        const double width = h.bin_width();
        for (double v : values)
        {
            const double idx = std::floor((v - lo) / width);
            const auto i = static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(bins - 1)));
            ++h.counts[i];
        }
        return h;
    }
}
