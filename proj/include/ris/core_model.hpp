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

#ifndef RIS_CORE_MODEL_HPP
#define RIS_CORE_MODEL_HPP

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ris
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    /// Unnormalized sinc: sin(x)/x with sinc(0) = 1.
    double sinc(double x);

    /// Wraps an angle into [0, 2pi).
    double wrap_two_pi(double angle);

    /// Wraps an angle into (-pi, pi].
    double wrap_pi(double angle);

    inline double deg_to_rad(double deg) { return deg * (pi / 180.0); }
    inline double rad_to_deg(double rad) { return rad * (180.0 / pi); }

    // ------------------------------------------------------------------------
    // Geometry

    /// Rectangular grid of reflecting elements.
    /// Column index m runs along x (m_x columns), row index n along y (m_y rows).
    class RisGeometry
    {
    public:
        RisGeometry(int m_x, int m_y, double p_x, double p_y, double lambda_c);

        /// Half-wavelength element spacing in both directions.
        static RisGeometry half_wavelength(int m_x, int m_y, double lambda_c = 1.0);

        int m_x() const noexcept { return m_x_; }
        int m_y() const noexcept { return m_y_; }
        double p_x() const noexcept { return p_x_; }
        double p_y() const noexcept { return p_y_; }
        double lambda_c() const noexcept { return lambda_c_; }

        /// Free-space wavenumber 2*pi/lambda_c in rad/m.
        double k0() const noexcept { return two_pi / lambda_c_; }

        /// Phase gradient per column needed to redirect a wave from theta_in to theta_out:
        /// 2*pi*(p_x/lambda_c)*(sin(theta_out) - sin(theta_in)).
        double column_phase_gradient(double theta_in, double theta_out) const;

    private:
        int m_x_;
        int m_y_;
        double p_x_;
        double p_y_;
        double lambda_c_;
    };

    /// Incidence and observation angles plus link distances.
    struct LinkGeometry
    {
        double theta_in = 0.0;  ///< incidence polar angle, rad, [0, pi/2)
        double theta_out = 0.0; ///< observation polar angle, rad
        double phi_in = 0.0;    ///< incidence azimuth, rad
        double phi_out = 0.0;   ///< observation azimuth, rad
        double d_1 = 1.0;       ///< transmitter to surface distance, m
        double d_2 = 1.0;       ///< surface to receiver distance, m

        /// Transmitter, surface and receiver share the y = 0 plane.
        bool is_planar() const noexcept { return phi_in == 0.0 && phi_out == 0.0; }
        void validate() const;
    };

    /// Receiver motion. Only carried through the signal model; distribution fitting needs speed == 0.
    struct MobilityParams
    {
        double speed = 0.0;                 ///< m/s
        double direction = 0.0;             ///< movement angle gamma, rad
        std::vector<double> arrival_angles; ///< alpha_n per direct path, rad

        bool is_stationary() const noexcept { return speed == 0.0; }

        /// Doppler angular frequency 2*pi*v/lambda*cos(gamma - alpha).
        double doppler_angular_frequency(double lambda_c, double arrival_angle) const;

        void validate() const;
    };

    // ------------------------------------------------------------------------
    // Element response

    /// Complex reflection coefficient beta * exp(j*phi) of a single element.
    class ReflectionCoefficient
    {
    public:
        explicit ReflectionCoefficient(std::complex<double> value);
        static ReflectionCoefficient from_polar(double amplitude, double phase);

        std::complex<double> value() const noexcept { return value_; }
        double amplitude() const noexcept { return std::abs(value_); }
        /// Phase in [0, 2pi).
        double phase() const noexcept;
        bool is_passive() const noexcept { return amplitude() <= 1.0 + 1e-12; }

    private:
        std::complex<double> value_;
    };

    /// Reflection of a normally incident plane wave on a load z_l backed by free space z_0:
    /// (z_l - z_0) / (z_l + z_0). An infinite z_l is an open circuit and reflects fully in phase.
    /// Throws DegenerateImpedance when |z_l + z_0| is at machine precision relative to the inputs.
    ReflectionCoefficient reflection_coefficient(std::complex<double> z_l, double z_0);

    // ------------------------------------------------------------------------
    // Phase configuration

    /// Either continuous phase control or B-bit control with step 2*pi / 2^B.
    class Quantization
    {
    public:
        static Quantization continuous() { return Quantization(0); }
        static Quantization discrete(int bits);

        bool is_continuous() const noexcept { return bits_ == 0; }
        bool is_discrete() const noexcept { return bits_ > 0; }
        int bits() const noexcept { return bits_; }
        /// 2*pi / 2^B for discrete control, 0 for continuous.
        double step() const noexcept;
        /// Maps a desired phase to the phase the hardware can realize, in [0, 2pi).
        double apply(double phase) const;

        bool operator==(const Quantization &) const = default;

    private:
        explicit Quantization(int bits) : bits_(bits) {}
        int bits_;
    };

    /// Nearest B-bit level t * 2pi/2^B to phi (circular distance). Ties go to the lower level.
    double quantize_phase(double phi_desired, int bits);

    /// Per-element phase discontinuities, stored in [0, 2pi), indexed (m, n).
    class PhaseConfig
    {
    public:
        PhaseConfig(Eigen::MatrixXd phases, Quantization quantization);

        /// All-zero configuration (plain mirror).
        static PhaseConfig uniform(const RisGeometry &geom, Quantization quantization = Quantization::continuous());

        const Eigen::MatrixXd &phases() const noexcept { return phases_; }
        double operator()(int m, int n) const { return phases_(m, n); }
        int m_x() const noexcept { return static_cast<int>(phases_.rows()); }
        int m_y() const noexcept { return static_cast<int>(phases_.cols()); }
        const Quantization &quantization() const noexcept { return quantization_; }

        bool matches(const RisGeometry &geom) const noexcept;
        /// True when every row carries the same phase per column (planar steering).
        bool is_row_constant() const noexcept;

    private:
        Eigen::MatrixXd phases_;
        Quantization quantization_;
    };

    /// Co-phase (anomalous reflection) configuration steering a wave from theta_in into theta_target.
    /// Column m gets 2*pi*(p_x/lambda_c)*(sin(theta_target) - sin(theta_in))*m, wrapped, then quantized.
    PhaseConfig co_phase_config(const RisGeometry &geom, double theta_in, double theta_target,
                                Quantization quantization = Quantization::continuous());

    /// Phase misalignment of column m when observed at theta_out, phi_m - eps*m wrapped into (-pi, pi].
    /// Row 0 of the configuration is used.
    double residual_phase(const PhaseConfig &config, const RisGeometry &geom, double theta_in, double theta_out, int m);

    /// residual_phase for every column.
    std::vector<double> residual_phases(const PhaseConfig &config, const RisGeometry &geom, double theta_in, double theta_out);

    /// Equal-width histogram over [lo, hi). Values outside the range are counted in the edge bins.
    struct Histogram
    {
        double lo = 0.0;
        double hi = 0.0;
        std::vector<std::size_t> counts;

        double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
        double bin_center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
    };

    Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi);
}

#endif
