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

#include "ris/core_model.hpp"
#include "ris/errors.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <limits>
#include <random>

using Catch::Approx;
using namespace ris;

namespace
{
    // Nearest level by exhaustive search over all 2^B levels, circular distance.
    double nearest_level(double phi, int bits)
    {
        const int levels = 1 << bits;
        const double step = two_pi / levels;
        double best = 0.0;
        double best_d = 10.0;
        for (int t = 0; t < levels; ++t)
        {
            const double d = std::abs(wrap_pi(phi - t * step));
            if (d < best_d - 1e-15)
            {
                best_d = d;
                best = t * step;
            }
        }
        return best;
    }
}

TEST_CASE("sinc and wrapping helpers")
{
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(pi / 2) == Approx(2.0 / pi).epsilon(1e-15));
    CHECK(std::abs(sinc(pi)) < 1e-15);
    CHECK(sinc(1e-9) == Approx(1.0));

    CHECK(wrap_two_pi(-0.1) == Approx(two_pi - 0.1));
    CHECK(wrap_two_pi(two_pi) == 0.0);
    CHECK(wrap_two_pi(-1e-18) == 0.0);
    CHECK(wrap_pi(pi) == Approx(pi));
    CHECK(wrap_pi(-pi) == Approx(pi));
    CHECK(wrap_pi(3 * pi / 2) == Approx(-pi / 2));
}

TEST_CASE("RisGeometry validates and derives k0")
{
    const RisGeometry g(8, 4, 0.005, 0.006, 0.01);
    CHECK(g.k0() * g.lambda_c() == Approx(two_pi).epsilon(1e-15));
    CHECK_THROWS_AS(RisGeometry(0, 1, 1, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(RisGeometry(1, 1, -1, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(RisGeometry(1, 1, 1, 1, 0), InvalidArgument);
    try
    {
        RisGeometry(1, 0, 1, 1, 1);
    }
    catch (const InvalidArgument &e)
    {
        CHECK(e.field() == "m_y");
    }
}

TEST_CASE("LinkGeometry and mobility")
{
    LinkGeometry link;
    CHECK(link.is_planar());
    link.phi_out = 0.1;
    CHECK_FALSE(link.is_planar());
    link.d_1 = 0.0;
    CHECK_THROWS_AS(link.validate(), InvalidArgument);

    MobilityParams mob;
    CHECK(mob.is_stationary());
    mob.speed = 10.0;
    CHECK(mob.doppler_angular_frequency(0.1, 0.0) == Approx(two_pi * 100.0));
    mob.speed = -1.0;
    CHECK_THROWS_AS(mob.validate(), InvalidArgument);
}

TEST_CASE("reflection_coefficient examples")
{
    CHECK(std::abs(reflection_coefficient({377.0, 0.0}, 377.0).value()) < 1e-15);

    const auto open = reflection_coefficient({std::numeric_limits<double>::infinity(), 0.0}, 377.0);
    CHECK(open.value() == std::complex<double>(1.0, 0.0));
    CHECK(open.phase() == 0.0);

    const auto r = reflection_coefficient({0.0, 377.0}, 377.0);
    CHECK(r.value().real() == Approx(0.0).margin(1e-15));
    CHECK(r.value().imag() == Approx(1.0).epsilon(1e-15));
    CHECK(r.phase() == Approx(pi / 2));

    CHECK_THROWS_AS(reflection_coefficient({-377.0, 0.0}, 377.0), DegenerateImpedance);
}

TEST_CASE("purely reactive loads reflect with unit magnitude")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> x(-1e4, 1e4);
    for (int i = 0; i < 1000; ++i)
    {
        const auto r = reflection_coefficient({0.0, x(gen)}, 377.0);
        CHECK(std::abs(r.amplitude() - 1.0) < 1e-12);
        CHECK(r.is_passive());
        CHECK(r.phase() >= 0.0);
        CHECK(r.phase() < two_pi);
    }
}

TEST_CASE("quantize_phase picks the nearest level")
{
    CHECK(quantize_phase(0.3 * pi, 1) == 0.0);
    CHECK(quantize_phase(0.6 * pi, 1) == Approx(pi));
    CHECK(quantize_phase(1.7 * pi, 1) == 0.0);
    // tie between 0 and pi goes to the lower level
    CHECK(quantize_phase(0.5 * pi, 1) == 0.0);
    CHECK_THROWS_AS(quantize_phase(1.0, 0), InvalidArgument);

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> phi(-20.0, 20.0);
    for (int bits = 1; bits <= 5; ++bits)
        for (int i = 0; i < 2000; ++i)
        {
            const double x = phi(gen);
            const double q = quantize_phase(x, bits);
            CHECK(q == Approx(nearest_level(x, bits)).margin(1e-12));
            CHECK(std::abs(wrap_pi(x - q)) <= pi / (1 << bits) + 1e-12);
            // idempotent
            CHECK(quantize_phase(q, bits) == q);
        }
}

TEST_CASE("fine quantization stays within half a step")
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> phi(0.0, two_pi);
    for (int i = 0; i < 1000; ++i)
    {
        const double x = phi(gen);
        CHECK(std::abs(wrap_pi(x - quantize_phase(x, 16))) <= two_pi / (1 << 17) + 1e-15);
    }
}

TEST_CASE("PhaseConfig invariants")
{
    const auto g = RisGeometry::half_wavelength(4, 2);
    CHECK(PhaseConfig::uniform(g).matches(g));
    Eigen::MatrixXd bad = Eigen::MatrixXd::Constant(4, 2, two_pi);
    CHECK_THROWS_AS(PhaseConfig(bad, Quantization::continuous()), InvalidArgument);
    Eigen::MatrixXd off = Eigen::MatrixXd::Constant(4, 2, 1.0);
    CHECK_THROWS_AS(PhaseConfig(off, Quantization::discrete(1)), InvalidArgument);
    Eigen::MatrixXd on = Eigen::MatrixXd::Constant(4, 2, pi);
    CHECK_NOTHROW(PhaseConfig(on, Quantization::discrete(1)));
    on(1, 1) = 0.0;
    CHECK_FALSE(PhaseConfig(on, Quantization::discrete(1)).is_row_constant());
}

TEST_CASE("co_phase_config examples")
{
    const auto g = RisGeometry::half_wavelength(16, 3);

    const auto flat = co_phase_config(g, deg_to_rad(20), deg_to_rad(20));
    CHECK(flat.phases().isZero());

    const auto cont = co_phase_config(g, 0.0, deg_to_rad(30));
    for (int m = 0; m < 16; ++m)
    {
        CHECK(std::abs(wrap_pi(cont(m, 0) - 0.5 * pi * m)) < 1e-12);
        CHECK(cont(m, 2) == cont(m, 0));
    }

    const auto one_bit = co_phase_config(g, 0.0, deg_to_rad(30), Quantization::discrete(1));
    for (int m = 0; m < 16; ++m)
    {
        // odd m sit exactly on a decision boundary, either level is nearest
        if (m % 2 == 0)
            CHECK(one_bit(m, 0) == quantize_phase(wrap_two_pi(0.5 * pi * m), 1));
        CHECK(std::abs(wrap_pi(one_bit(m, 0) - 0.5 * pi * m)) <= pi / 2 + 1e-12);
    }
}

TEST_CASE("residual phases vanish at the target for continuous control")
{
    const RisGeometry g(64, 1, 0.43, 0.5, 1.0);
    for (double target_deg = -60; target_deg <= 60; target_deg += 7.5)
    {
        const double t = deg_to_rad(target_deg);
        const auto cfg = co_phase_config(g, deg_to_rad(10), t);
        for (double r : residual_phases(cfg, g, deg_to_rad(10), t))
            CHECK(std::abs(r) < 1e-12);
    }
}

TEST_CASE("residual phase off target follows the gradient difference")
{
    const auto g = RisGeometry::half_wavelength(32, 1);
    const double t = deg_to_rad(25), o = deg_to_rad(40);
    const auto cfg = co_phase_config(g, 0.0, t);
    for (int m = 0; m < 32; ++m)
    {
        const double expected = wrap_pi(two_pi * 0.5 * (std::sin(t) - std::sin(o)) * m);
        CHECK(std::abs(wrap_pi(residual_phase(cfg, g, 0.0, o, m) - expected)) < 1e-9);
    }
    CHECK_THROWS_AS(residual_phase(cfg, g, 0.0, o, 32), InvalidArgument);
}

TEST_CASE("discrete residuals at the target stay within half a step")
{
    const auto g = RisGeometry::half_wavelength(64, 1);
    for (int bits = 1; bits <= 3; ++bits)
    {
        const auto q = Quantization::discrete(bits);
        const auto cfg = co_phase_config(g, 0.0, deg_to_rad(17), q);
        for (double r : residual_phases(cfg, g, 0.0, deg_to_rad(17)))
        {
            CHECK(r > -q.step() / 2 - 1e-12);
            CHECK(r <= q.step() / 2 + 1e-12);
        }
    }
}

TEST_CASE("quantization residuals are uniform for an irrational gradient")
{
    const int m = 2000;
    const auto q = Quantization::discrete(2);
    const double eps = q.step() / std::sqrt(2.0);
    // p_x / lambda chosen so that the column gradient at 90 degrees equals eps
    const RisGeometry g(m, 1, eps / two_pi, 0.5, 1.0);
    const auto cfg = co_phase_config(g, 0.0, pi / 2, q);
    std::vector<double> r;
    for (double x : residual_phases(cfg, g, 0.0, pi / 2))
        r.push_back(-x);
    const double half = q.step() / 2;
    const double d = oracle::ks_statistic(r, [half](double x)
                                          { return std::clamp((x + half) / (2 * half), 0.0, 1.0); });
    CHECK(oracle::ks_p_value(d, m) > 0.01);
}

TEST_CASE("histogram counts every value")
{
    const std::vector<double> v{-1.0, 0.05, 0.15, 0.95, 2.0};
    const auto h = histogram(v, 10, 0.0, 1.0);
    CHECK(h.counts.front() == 2);
    CHECK(h.counts[1] == 1);
    CHECK(h.counts.back() == 2);
    CHECK(h.bin_center(0) == Approx(0.05));
    CHECK_THROWS_AS(histogram(v, 0, 0.0, 1.0), InvalidArgument);
}
