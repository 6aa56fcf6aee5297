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

#ifndef RIS_RADIATION_HPP
#define RIS_RADIATION_HPP

#include "ris/core_model.hpp"

#include <complex>
#include <iosfwd>
#include <optional>

#include <Eigen/Dense>

namespace ris
{
    using ComplexMatrix = Eigen::MatrixXcd;

    /// Two-dimensional inverse DFT
    ///
    ///   out(p, q) = 1/(M N) sum_m sum_n f(m, n) exp(j 2 pi m p / M) exp(j 2 pi n q / N)
    ///
    /// computed as two separable passes with exact integer reduction of the twiddle index.
    /// Throws InvalidArgument for an empty input.
    ComplexMatrix idft2(const ComplexMatrix &f);

    /// Observation direction of a pattern bin. theta in [0, pi/2], phi in (-pi, pi].
    struct Direction
    {
        double theta = 0.0;
        double phi = 0.0;
    };

    /// Direction cosines (u, v) = (sin(theta) cos(phi), sin(theta) sin(phi)) addressed by bin (p, q)
    /// of a P x Q grid. Indices above P/2 (Q/2) are negative spatial frequencies p - P (q - Q).
    struct DirectionCosines
    {
        double u = 0.0;
        double v = 0.0;
    };

    DirectionCosines direction_cosines(int p, int q, int grid_p, int grid_q, const RisGeometry &geom);

    /// Inverts the bin-to-direction mapping; std::nullopt when the bin is evanescent (|sin(theta)| > 1).
    std::optional<Direction> direction_from_indices(int p, int q, int grid_p, int grid_q, const RisGeometry &geom);

    /// Amplitude c_0 with which one element contributes to the received envelope.
    ///
    /// c_0 = field_scale * area * distance * fraunhofer * leaning, where
    ///   field_scale = E_0 k / (4 pi), area = p_x p_y, distance = 1/(d_1 d_2),
    ///   fraunhofer  = |sinc(k u' p_x / 2)| with u' = sin(theta_out) - sin(theta_in),
    ///   leaning     = cos(theta_out).
    class ElementAmplitude
    {
    public:
        struct Components
        {
            double field_scale = 1.0;
            double area = 1.0;
            double distance = 1.0;
            double fraunhofer = 1.0;
            double leaning = 1.0;
        };

        /// Builds c_0 from the link geometry. e_0 is the incident field amplitude.
        static ElementAmplitude from_geometry(const RisGeometry &geom, const LinkGeometry &link, double e_0 = 1.0);

        /// A bare amplitude with all path-loss factors folded into it.
        static ElementAmplitude constant(double c_0);

        double c0() const noexcept { return c0_; }
        const Components &components() const noexcept { return components_; }

        /// c_0 equals the product of its stored components.
        bool is_consistent(double rel_tol = 1e-12) const noexcept;

    private:
        explicit ElementAmplitude(Components components);
        Components components_;
        double c0_;
    };

    /// Reflected tangential field per element, beta(m, n) * exp(j phi(m, n)). Passive elements have beta = 1.
    struct FieldMatrix
    {
        ComplexMatrix entries;

        static FieldMatrix from_config(const PhaseConfig &config);
    };

    /// Far-field pattern sampled on a zero-padded grid.
    class PatternGrid
    {
    public:
        PatternGrid(RisGeometry geom, ComplexMatrix values);

        int grid_p() const noexcept { return static_cast<int>(values_.rows()); }
        int grid_q() const noexcept { return static_cast<int>(values_.cols()); }
        const ComplexMatrix &values() const noexcept { return values_; }
        std::complex<double> value(int p, int q) const { return values_(p, q); }

        DirectionCosines cosines(int p, int q) const;
        std::optional<Direction> direction(int p, int q) const;
        bool is_physical(int p, int q) const { return direction(p, q).has_value(); }

        /// Physical bin with the largest magnitude.
        std::pair<int, int> peak_bin() const;

    private:
        RisGeometry geom_;
        ComplexMatrix values_;
    };

    struct PatternPadding
    {
        int p = 512;
        int q = 512;

        /// One bin per element, P = M_x and Q = M_y.
        static PatternPadding exact(const RisGeometry &geom) { return {geom.m_x(), geom.m_y()}; }
    };

    /// Far-field pattern of the surface lit by a plane wave from theta_in (zero azimuth).
    ///
    /// Bin (p, q) holds
    ///
    ///   c_0(u, v) * K_1 * sum_{m,n} beta exp(j (phi(m,n) - k u' x_m - k v y_n))
    ///
    /// with element centers x_m = (m - (M_x - 1)/2) p_x, y_n likewise, u' = u - sin(theta_in),
    /// c_0(u, v) = amplitude_scale * p_x p_y * |sinc(k u' p_x / 2) sinc(k v p_y / 2)| * cos(theta_out).
    /// The element sum is evaluated by idft2 over the zero-padded, conjugated field matrix;
    /// K_1 restores the phase reference at the array centre. Evanescent bins are zeroed.
    PatternGrid ris_pattern(const RisGeometry &geom, const PhaseConfig &config, double theta_in,
                            PatternPadding pad = {}, double amplitude_scale = 1.0);

    /// Specular envelope of the planar problem at t = 0:
    ///
    ///   sum_{m=0}^{M-1} c_m exp(j (theta_0 - eps m + phi_m)),
    ///
    /// eps = 2 pi (p_x/lambda_c)(sin(theta_out) - sin(theta_in)),
    /// theta_0 = k u' (M - 1) p_x / 2 + k (d_1 + d_2), c_m = M_y * c_0.
    /// Throws ModeError for nonzero azimuth and InvalidArgument when rows differ.
    std::complex<double> ris_envelope_2d(const RisGeometry &geom, const PhaseConfig &config,
                                         const LinkGeometry &link, const ElementAmplitude &amp);

    /// Circular-arc approximation of the off-target array magnitude, M c_0 |sinc(M delta_phi / 2)|.
    double vector_graph_magnitude(int m, double c_0, double delta_phi);

    /// CSV rows (p, q, theta_deg, phi_deg, re, im, magnitude_db) for every physical bin.
    void write_pattern_csv(std::ostream &os, const PatternGrid &grid);
}

#endif
