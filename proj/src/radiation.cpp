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

#include "ris/radiation.hpp"
#include "ris/csv.hpp"
#include "ris/errors.hpp"

#include <cmath>
#include <ostream>
#include <vector>

namespace ris
{
    namespace
    {
        std::vector<std::complex<double>> twiddles(Eigen::Index n)
        {
            std::vector<std::complex<double>> tw(static_cast<std::size_t>(n));
            for (Eigen::Index k = 0; k < n; ++k)
                tw[static_cast<std::size_t>(k)] = std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(n));
            return tw;
        }

        int signed_index(int p, int grid)
        {
            return 2 * p > grid ? p - grid : p;
        }
    }

    ComplexMatrix idft2(const ComplexMatrix &f)
    {
        const Eigen::Index rows = f.rows();
        const Eigen::Index cols = f.cols();
        if (rows < 1 || cols < 1)
            throw InvalidArgument("f", "idft2 needs a non-empty matrix");

        // Zero-padded inputs are mostly empty; only the support enters the sums.
        std::vector<Eigen::Index> nz_rows, nz_cols;
        for (Eigen::Index m = 0; m < rows; ++m)
            if (f.row(m).cwiseAbs2().sum() > 0.0)
                nz_rows.push_back(m);
        for (Eigen::Index n = 0; n < cols; ++n)
            if (f.col(n).cwiseAbs2().sum() > 0.0)
                nz_cols.push_back(n);

        const auto tw_rows = twiddles(rows);
        const auto tw_cols = twiddles(cols);

        ComplexMatrix partial = ComplexMatrix::Zero(rows, cols);
        for (Eigen::Index n : nz_cols)
            for (Eigen::Index p = 0; p < rows; ++p)
            {
                std::complex<double> acc = 0.0;
                for (Eigen::Index m : nz_rows)
                    acc += f(m, n) * tw_rows[static_cast<std::size_t>((m * p) % rows)];
                partial(p, n) = acc;
            }

        ComplexMatrix out(rows, cols);
        const double norm = 1.0 / (static_cast<double>(rows) * static_cast<double>(cols));
        for (Eigen::Index p = 0; p < rows; ++p)
            for (Eigen::Index q = 0; q < cols; ++q)
            {
                std::complex<double> acc = 0.0;
                for (Eigen::Index n : nz_cols)
                    acc += partial(p, n) * tw_cols[static_cast<std::size_t>((n * q) % cols)];
                out(p, q) = acc * norm;
            }
        return out;
    }

    DirectionCosines direction_cosines(int p, int q, int grid_p, int grid_q, const RisGeometry &geom)
    {
        detail::require(grid_p >= 1 && grid_q >= 1, "grid", "dimensions must be >= 1");
        detail::require(p >= 0 && p < grid_p, "p", "index out of range");
        detail::require(q >= 0 && q < grid_q, "q", "index out of range");
        // 2 pi / (P p_x k_0) = lambda_c / (P p_x)
        const double u = signed_index(p, grid_p) * geom.lambda_c() / (grid_p * geom.p_x());
        const double v = signed_index(q, grid_q) * geom.lambda_c() / (grid_q * geom.p_y());
        return {u, v};
    }

    std::optional<Direction> direction_from_indices(int p, int q, int grid_p, int grid_q, const RisGeometry &geom)
    {
        const auto [u, v] = direction_cosines(p, q, grid_p, grid_q, geom);
        const double s = std::hypot(u, v);
        if (s > 1.0 + 1e-12)
            return std::nullopt;
        Direction d;
        d.theta = std::asin(std::min(s, 1.0));
        d.phi = (u == 0.0 && v == 0.0) ? 0.0 : std::atan2(v, u);
        return d;
    }

    // ------------------------------------------------------------------------

    ElementAmplitude::ElementAmplitude(Components components) : components_(components)
    {
        c0_ = components_.field_scale * components_.area * components_.distance * components_.fraunhofer * components_.leaning;
        detail::require(std::isfinite(c0_) && c0_ >= 0.0, "c_0", "must be finite and >= 0");
    }

    ElementAmplitude ElementAmplitude::from_geometry(const RisGeometry &geom, const LinkGeometry &link, double e_0)
    {
        link.validate();
        detail::require(std::isfinite(e_0) && e_0 >= 0.0, "e_0", "must be finite and >= 0");
        const double k = geom.k0();
        const double u_prime = std::sin(link.theta_out) - std::sin(link.theta_in);
        Components c;
        c.field_scale = e_0 * k / (4.0 * pi);
        c.area = geom.p_x() * geom.p_y();
        c.distance = 1.0 / (link.d_1 * link.d_2);
        c.fraunhofer = std::abs(sinc(0.5 * k * u_prime * geom.p_x()));
        c.leaning = std::cos(link.theta_out);
        return ElementAmplitude(c);
    }

    ElementAmplitude ElementAmplitude::constant(double c_0)
    {
        Components c;
        c.field_scale = c_0;
        return ElementAmplitude(c);
    }

    bool ElementAmplitude::is_consistent(double rel_tol) const noexcept
    {
        const double product = components_.field_scale * components_.area * components_.distance * components_.fraunhofer * components_.leaning;
        return c0_ >= 0.0 && std::abs(product - c0_) <= rel_tol * std::max(std::abs(c0_), 1e-300);
    }

    FieldMatrix FieldMatrix::from_config(const PhaseConfig &config)
    {
        FieldMatrix f;
        f.entries = config.phases().unaryExpr([](double phi)
                                              { return std::polar(1.0, phi); });
        return f;
    }

    // ------------------------------------------------------------------------

    PatternGrid::PatternGrid(RisGeometry geom, ComplexMatrix values) : geom_(geom), values_(std::move(values)) {}

    DirectionCosines PatternGrid::cosines(int p, int q) const
    {
        return direction_cosines(p, q, grid_p(), grid_q(), geom_);
    }

    std::optional<Direction> PatternGrid::direction(int p, int q) const
    {
        return direction_from_indices(p, q, grid_p(), grid_q(), geom_);
    }

    std::pair<int, int> PatternGrid::peak_bin() const
    {
        std::pair<int, int> best{0, 0};
        double best_mag = -1.0;
        for (int p = 0; p < grid_p(); ++p)
            for (int q = 0; q < grid_q(); ++q)
            {
                if (!is_physical(p, q))
                    continue;
                const double mag = std::abs(values_(p, q));
                if (mag > best_mag)
                {
                    best_mag = mag;
                    best = {p, q};
                }
            }
        return best;
    }

    PatternGrid ris_pattern(const RisGeometry &geom, const PhaseConfig &config, double theta_in,
                            PatternPadding pad, double amplitude_scale)
    {
        detail::require(config.matches(geom), "config", "dimensions must match the geometry");
        detail::require(pad.p >= geom.m_x(), "pad.p", "must be >= m_x");
        detail::require(pad.q >= geom.m_y(), "pad.q", "must be >= m_y");
        detail::require(std::isfinite(theta_in) && std::abs(theta_in) < pi / 2, "theta_in", "must lie in (-pi/2, pi/2)");
        detail::require(std::isfinite(amplitude_scale) && amplitude_scale >= 0.0, "amplitude_scale", "must be finite and >= 0");

        const double k = geom.k0();
        const double sin_in = std::sin(theta_in);
        const FieldMatrix field = FieldMatrix::from_config(config);

        // The observed phase of element (m, n) is phi - k u' x_m - k v y_n. The idft2 kernel carries
        // +j, so transform the conjugate and conjugate back; the incidence tilt shifts u to u'.
        ComplexMatrix padded = ComplexMatrix::Zero(pad.p, pad.q);
        for (int m = 0; m < geom.m_x(); ++m)
        {
            const std::complex<double> tilt = std::polar(1.0, k * sin_in * m * geom.p_x());
            for (int n = 0; n < geom.m_y(); ++n)
                padded(m, n) = std::conj(field.entries(m, n) * tilt);
        }
        const ComplexMatrix inv = idft2(padded);
        const double cells = static_cast<double>(pad.p) * static_cast<double>(pad.q);

        ComplexMatrix values = ComplexMatrix::Zero(pad.p, pad.q);
        for (int p = 0; p < pad.p; ++p)
            for (int q = 0; q < pad.q; ++q)
            {
                const auto dir = direction_from_indices(p, q, pad.p, pad.q, geom);
                if (!dir)
                    continue;
                const auto [u, v] = direction_cosines(p, q, pad.p, pad.q, geom);
                const double u_prime = u - sin_in;
                const double c0 = amplitude_scale * geom.p_x() * geom.p_y() *
                                  std::abs(sinc(0.5 * k * u_prime * geom.p_x()) * sinc(0.5 * k * v * geom.p_y())) *
                                  std::cos(dir->theta);
                const std::complex<double> k1 = std::polar(1.0, 0.5 * k * (u_prime * (geom.m_x() - 1) * geom.p_x() + v * (geom.m_y() - 1) * geom.p_y()));
                values(p, q) = c0 * k1 * std::conj(inv(p, q)) * cells;
            }
        return PatternGrid(geom, std::move(values));
    }

    std::complex<double> ris_envelope_2d(const RisGeometry &geom, const PhaseConfig &config,
                                         const LinkGeometry &link, const ElementAmplitude &amp)
    {
        if (!link.is_planar())
            throw ModeError("ris_envelope_2d: planar problem requires phi_in = phi_out = 0");
        detail::require(config.matches(geom), "config", "dimensions must match the geometry");
        detail::require(config.is_row_constant(), "config", "planar envelope needs identical rows");
        detail::require(std::isfinite(link.d_1) && std::isfinite(link.d_2), "link", "distances must be finite");

        const int m_cols = geom.m_x();
        const double k = geom.k0();
        const double eps = geom.column_phase_gradient(link.theta_in, link.theta_out);
        const double u_prime = std::sin(link.theta_out) - std::sin(link.theta_in);
        const double theta_0 = k * u_prime * (m_cols - 1) * geom.p_x() / 2.0 + k * (link.d_1 + link.d_2);
        const double c_m = geom.m_y() * amp.c0();

        std::complex<double> acc = 0.0;
        for (int m = 0; m < m_cols; ++m)
            acc += std::polar(c_m, theta_0 - eps * m + config(m, 0));
        return acc;
    }

    double vector_graph_magnitude(int m, double c_0, double delta_phi)
    {
        detail::require(m >= 1, "M", "must be >= 1");
        return m * c_0 * std::abs(sinc(0.5 * m * delta_phi));
    }

    void write_pattern_csv(std::ostream &os, const PatternGrid &grid)
    {
        csv::write_row(os, {"p", "q", "theta_deg", "phi_deg", "re", "im", "magnitude_db"});
        for (int p = 0; p < grid.grid_p(); ++p)
            for (int q = 0; q < grid.grid_q(); ++q)
            {
                const auto dir = grid.direction(p, q);
                if (!dir)
                    continue;
                const auto val = grid.value(p, q);
                const double mag = std::abs(val);
                const double db = mag > 0.0 ? 20.0 * std::log10(mag) : -400.0;
                csv::write_row(os, {csv::number(p), csv::number(q), csv::number(rad_to_deg(dir->theta)),
                                    csv::number(rad_to_deg(dir->phi)), csv::number(val.real()),
                                    csv::number(val.imag()), csv::number(db)});
            }
    }
}
