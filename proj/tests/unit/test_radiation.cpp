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

#include "catch_amalgamated.hpp"

#include "ris/errors.hpp"
#include "ris/radiation.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>

using Catch::Approx;
using namespace ris;

namespace
{
    ComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed)
    {
        std::mt19937_64 gen(seed);
        std::normal_distribution<double> n(0.0, 1.0);
        ComplexMatrix f(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                f(i, j) = {n(gen), n(gen)};
        return f;
    }

    PhaseConfig random_config(const RisGeometry &g, std::uint64_t seed)
    {
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> u(0.0, two_pi);
        Eigen::MatrixXd phases(g.m_x(), g.m_y());
        for (int m = 0; m < g.m_x(); ++m)
            for (int n = 0; n < g.m_y(); ++n)
                phases(m, n) = u(gen);
        return PhaseConfig(phases, Quantization::continuous());
    }
}

TEST_CASE("idft2 examples")
{
    const ComplexMatrix ones = ComplexMatrix::Ones(4, 4);
    const auto a = idft2(ones);
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            CHECK(std::abs(a(p, q) - (p == 0 && q == 0 ? 1.0 : 0.0)) < 1e-12);

    ComplexMatrix impulse = ComplexMatrix::Zero(4, 4);
    impulse(0, 0) = 1.0;
    const auto b = idft2(impulse);
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            CHECK(std::abs(b(p, q) - 1.0 / 16.0) < 1e-15);

    CHECK_THROWS_AS(idft2(ComplexMatrix(0, 3)), InvalidArgument);
}

TEST_CASE("idft2 matches the brute-force double sum")
{
    for (auto [rows, cols] : {std::pair{8, 8}, {5, 7}, {1, 9}, {12, 1}})
    {
        const auto f = random_matrix(rows, cols, 100 + rows * cols);
        const auto fast = idft2(f);
        const auto slow = oracle::idft2_brute_force(f);
        CHECK((fast - slow).norm() <= 1e-12 * slow.norm());
    }
}

TEST_CASE("idft2 is linear and satisfies Parseval")
{
    const auto f = random_matrix(6, 10, 1);
    const auto g = random_matrix(6, 10, 2);
    const std::complex<double> alpha(0.3, -1.2), beta(-2.0, 0.5);
    const auto lhs = idft2(alpha * f + beta * g);
    const auto rhs = (alpha * idft2(f) + beta * idft2(g)).eval();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

    const double energy = f.squaredNorm();
    CHECK(60.0 * idft2(f).squaredNorm() == Approx(energy).epsilon(1e-10));
}

TEST_CASE("direction_from_indices examples")
{
    const auto g = RisGeometry::half_wavelength(50, 1);
    const auto broadside = direction_from_indices(0, 0, 50, 1, g);
    REQUIRE(broadside);
    CHECK(broadside->theta == 0.0);

    const auto d = direction_from_indices(10, 0, 50, 1, g);
    REQUIRE(d);
    CHECK(rad_to_deg(d->theta) == Approx(23.578178478).epsilon(1e-9));
    CHECK(d->phi == 0.0);

    // negative spatial frequency maps to the mirrored direction
    const auto neg = direction_from_indices(40, 0, 50, 1, g);
    REQUIRE(neg);
    CHECK(neg->theta == Approx(d->theta));
    CHECK(std::abs(neg->phi) == Approx(pi));

    // P p_x = 25 lambda, |u| = 1.2 needs |p| = 30 on a 50-bin half-wavelength grid, out of range;
    // use P = 100 with p_x = lambda/4 so that p = 30 gives u = 1.2
    const RisGeometry quarter(50, 1, 0.25, 0.5, 1.0);
    CHECK_FALSE(direction_from_indices(30, 0, 100, 1, quarter).has_value());

    const auto c = direction_cosines(30, 0, 100, 1, quarter);
    CHECK(c.u == Approx(1.2));
}

TEST_CASE("ElementAmplitude components")
{
    const auto g = RisGeometry::half_wavelength(10, 1, 0.01);
    LinkGeometry link;
    link.theta_in = deg_to_rad(10);
    link.theta_out = deg_to_rad(40);
    link.d_1 = 3.0;
    link.d_2 = 5.0;
    const auto amp = ElementAmplitude::from_geometry(g, link, 2.0);
    CHECK(amp.is_consistent());
    CHECK(amp.c0() >= 0.0);
    const auto &c = amp.components();
    CHECK(c.field_scale == Approx(2.0 * g.k0() / (4 * pi)));
    CHECK(c.area == Approx(g.p_x() * g.p_y()));
    CHECK(c.distance == Approx(1.0 / 15.0));
    CHECK(c.leaning == Approx(std::cos(link.theta_out)));
    const double up = std::sin(link.theta_out) - std::sin(link.theta_in);
    CHECK(c.fraunhofer == Approx(std::abs(std::sin(0.5 * g.k0() * up * g.p_x()) / (0.5 * g.k0() * up * g.p_x()))));
    CHECK(ElementAmplitude::constant(0.7).c0() == 0.7);
    CHECK_THROWS_AS(ElementAmplitude::constant(-1.0), InvalidArgument);
}

TEST_CASE("uniform config at normal incidence peaks at broadside with M_x M_y c_0")
{
    const auto g = RisGeometry::half_wavelength(12, 6);
    const auto grid = ris_pattern(g, PhaseConfig::uniform(g), 0.0, {64, 32});
    const auto [p, q] = grid.peak_bin();
    CHECK(p == 0);
    CHECK(q == 0);
    CHECK(std::abs(grid.value(0, 0)) == Approx(12 * 6 * g.p_x() * g.p_y()).epsilon(1e-12));
}

TEST_CASE("co-phase array factor peaks at the bin nearest the target")
{
    // The element factor c_0(u) falls off away from broadside and drags the peak of the
    // full pattern towards it by a few fine bins. The array factor is the full pattern
    // divided by the single-element pattern on the same grid.
    const auto g = RisGeometry::half_wavelength(20, 1);
    const PatternPadding pad{512, 1};
    const auto element = ris_pattern(RisGeometry::half_wavelength(1, 1), PhaseConfig::uniform(RisGeometry::half_wavelength(1, 1)), 0.0, pad);
    for (double target_deg = -60.0; target_deg <= 60.0; target_deg += 5.0)
    {
        const double target = deg_to_rad(target_deg);
        const auto grid = ris_pattern(g, co_phase_config(g, 0.0, target), 0.0, pad);
        int p = -1;
        double peak = -1.0;
        for (int b = 0; b < pad.p; ++b)
        {
            if (!grid.is_physical(b, 0) || std::abs(element.value(b, 0)) == 0.0)
                continue;
            const double af = std::abs(grid.value(b, 0)) / std::abs(element.value(b, 0));
            if (af > peak)
            {
                peak = af;
                p = b;
            }
        }

        int nearest = -1;
        double best = 1e9;
        for (int b = 0; b < pad.p; ++b)
        {
            const auto d = grid.direction(b, 0);
            if (!d)
                continue;
            const double signed_theta = std::abs(d->phi) > pi / 2 ? -d->theta : d->theta;
            if (std::abs(signed_theta - target) < best)
            {
                best = std::abs(signed_theta - target);
                nearest = b;
            }
        }
        INFO("target " << target_deg);
        CHECK(p == nearest);
    }
}

TEST_CASE("ris_pattern equals the per-direction element sum")
{
    const RisGeometry g(7, 5, 0.4, 0.55, 1.0);
    const auto cfg = random_config(g, 9);
    const double theta_in = deg_to_rad(25);
    const auto grid = ris_pattern(g, cfg, theta_in, {32, 16}, 1.7);
    double worst = 0.0;
    for (int p = 0; p < 32; ++p)
        for (int q = 0; q < 16; ++q)
        {
            if (!grid.is_physical(p, q))
            {
                CHECK(grid.value(p, q) == std::complex<double>(0.0, 0.0));
                continue;
            }
            const auto c = grid.cosines(p, q);
            const auto ref = oracle::pattern_direct_sum(g, cfg, theta_in, c.u, c.v, 1.7);
            if (std::abs(ref) > 1e-12)
                worst = std::max(worst, std::abs(grid.value(p, q) - ref) / std::abs(ref));
            else
                CHECK(std::abs(grid.value(p, q)) < 1e-12);
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("pattern requires padding at least the array size")
{
    const auto g = RisGeometry::half_wavelength(8, 2);
    CHECK_THROWS_AS(ris_pattern(g, PhaseConfig::uniform(g), 0.0, {4, 2}), InvalidArgument);
    const auto other = RisGeometry::half_wavelength(9, 2);
    CHECK_THROWS_AS(ris_pattern(g, PhaseConfig::uniform(other), 0.0, {16, 2}), InvalidArgument);
}

TEST_CASE("ris_envelope_2d examples")
{
    const auto g = RisGeometry::half_wavelength(40, 3, 0.01);
    LinkGeometry link;
    link.theta_in = deg_to_rad(5);
    link.theta_out = deg_to_rad(35);
    link.d_1 = 2.0;
    link.d_2 = 7.0;
    const auto amp = ElementAmplitude::from_geometry(g, link);
    const double c_m = g.m_y() * amp.c0();

    const auto aligned = co_phase_config(g, link.theta_in, link.theta_out);
    CHECK(std::abs(ris_envelope_2d(g, aligned, link, amp)) == Approx(40 * c_m).epsilon(1e-12));

    const auto single = RisGeometry::half_wavelength(1, 3, 0.01);
    for (std::uint64_t s = 0; s < 5; ++s)
    {
        const auto cfg = PhaseConfig(Eigen::MatrixXd::Constant(1, 3, 0.9 * s), Quantization::continuous());
        CHECK(std::abs(ris_envelope_2d(single, cfg, link, amp)) == Approx(c_m).epsilon(1e-12));
    }

    LinkGeometry normal = link;
    normal.theta_out = normal.theta_in;
    const auto amp_n = ElementAmplitude::from_geometry(g, normal);
    const double c_n = g.m_y() * amp_n.c0();
    const double theta_0 = g.k0() * (normal.d_1 + normal.d_2);
    const auto env = ris_envelope_2d(g, PhaseConfig::uniform(g), normal, amp_n);
    const auto expected = 40.0 * c_n * std::polar(1.0, theta_0);
    CHECK(std::abs(env - expected) < 1e-10 * std::abs(expected));

    LinkGeometry skew = link;
    skew.phi_out = 0.2;
    CHECK_THROWS_AS(ris_envelope_2d(g, aligned, skew, amp), ModeError);

    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(40, 3);
    rows(3, 1) = 1.0;
    CHECK_THROWS_AS(ris_envelope_2d(g, PhaseConfig(rows, Quantization::continuous()), link, amp), InvalidArgument);
}

TEST_CASE("ris_envelope_2d and the single-row pattern share the element sum")
{
    const auto g = RisGeometry::half_wavelength(16, 1);
    const double theta_in = deg_to_rad(12);
    const auto cfg = random_config(g, 4);
    const auto grid = ris_pattern(g, cfg, theta_in, {64, 1});
    for (int p = 0; p < 64; ++p)
    {
        const auto d = grid.direction(p, 0);
        if (!d || d->theta >= pi / 2 - 1e-9)
            continue;
        LinkGeometry link;
        link.theta_in = theta_in;
        link.theta_out = std::abs(d->phi) > pi / 2 ? -d->theta : d->theta;
        const double env = std::abs(ris_envelope_2d(g, cfg, link, ElementAmplitude::constant(1.0)));
        const double up = grid.cosines(p, 0).u - std::sin(theta_in);
        const double sx = 0.5 * g.k0() * up * g.p_x();
        const double c0 = g.p_x() * g.p_y() * std::abs(sx == 0.0 ? 1.0 : std::sin(sx) / sx) * std::cos(d->theta);
        INFO("bin " << p);
        CHECK(std::abs(grid.value(p, 0)) == Approx(c0 * env).epsilon(1e-9).margin(1e-12));
    }
}

TEST_CASE("vector_graph_magnitude examples")
{
    CHECK(vector_graph_magnitude(30, 0.2, 0.0) == Approx(6.0));
    CHECK(vector_graph_magnitude(30, 1.0, two_pi / 30) < 1e-14);
    const double exact = oracle::phasor_sum_magnitude(100, pi / 200);
    CHECK(vector_graph_magnitude(100, 1.0, pi / 200) == Approx(exact).epsilon(0.01));
    CHECK_THROWS_AS(vector_graph_magnitude(0, 1.0, 0.1), InvalidArgument);
}

TEST_CASE("envelope magnitude factors into element and array terms")
{
    const auto g = RisGeometry::half_wavelength(100, 1, 0.01);
    const double theta_in = 0.0, target = deg_to_rad(20);
    const auto cfg = co_phase_config(g, theta_in, target);
    const double eps_t = g.column_phase_gradient(theta_in, target);
    for (double off = -0.4; off <= 0.4; off += 0.05)
    {
        LinkGeometry link;
        link.theta_in = theta_in;
        link.theta_out = target + deg_to_rad(off);
        const double dphi = eps_t - g.column_phase_gradient(theta_in, link.theta_out);
        if (std::abs(100 * dphi) > pi / 4)
            continue;
        const auto amp = ElementAmplitude::from_geometry(g, link);
        const double env = std::abs(ris_envelope_2d(g, cfg, link, amp));
        const double vg = vector_graph_magnitude(100, amp.c0(), dphi);
        INFO("offset deg " << off);
        CHECK(env == Approx(vg).epsilon(0.01));
        CHECK(env == Approx(amp.c0() * oracle::phasor_sum_magnitude(100, dphi)).epsilon(1e-9));
    }
}

TEST_CASE("pattern CSV lists physical bins only")
{
    const auto g = RisGeometry::half_wavelength(4, 1);
    const auto grid = ris_pattern(g, PhaseConfig::uniform(g), 0.0, {8, 1});
    std::ostringstream os;
    write_pattern_csv(os, grid);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "p,q,theta_deg,phi_deg,re,im,magnitude_db");
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    int physical = 0;
    for (int p = 0; p < 8; ++p)
        physical += grid.is_physical(p, 0);
    CHECK(rows == physical);
}
