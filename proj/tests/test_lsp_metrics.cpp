// SPDX-License-Identifier: Apache-2.0
//
// chanlsp — urban radio channel measurement-to-model toolkit
// Copyright (C) 2026 chanlsp contributors
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

#include <catch_amalgamated.hpp>

#include "chanlsp/lsp_metrics.hpp"
#include "chanlsp/rng.hpp"
#include "chanlsp/stats.hpp"

#include <cmath>

using namespace chanlsp;
using Catch::Approx;

namespace
{

// direct-summation oracle for the delay and angle moments
double oracle_ds(const std::vector<Mpc> &m)
{
    double p = 0.0, m1 = 0.0, m2 = 0.0;
    for (const Mpc &x : m)
    {
        p += std::norm(x.gamma);
        m1 += x.tau_s * std::norm(x.gamma);
        m2 += x.tau_s * x.tau_s * std::norm(x.gamma);
    }
    return std::sqrt(m2 / p - (m1 / p) * (m1 / p));
}

double oracle_as_deg(const std::vector<Mpc> &m, bool departure)
{
    double p = 0.0;
    std::complex<double> z{0.0, 0.0};
    for (const Mpc &x : m)
    {
        p += std::norm(x.gamma);
        z += std::norm(x.gamma) * std::polar(1.0, departure ? x.phi_t_rad : x.phi_r_rad);
    }
    double r = std::abs(z) / p;
    return rad2deg(std::sqrt(-2.0 * std::log(std::max(r, 1e-12))));
}

std::vector<Mpc> random_mpcs(Rng &rng, int n)
{
    std::vector<Mpc> m(static_cast<std::size_t>(n));
    for (Mpc &x : m)
    {
        x.gamma = std::polar(std::pow(10.0, rng.uniform(-2.0, 0.0)),
                             rng.uniform(0.0, 2.0 * M_PI));
        x.tau_s = rng.uniform(0.0, 2e-6);
        x.phi_t_rad = rng.uniform(-M_PI, M_PI);
        x.phi_r_rad = rng.uniform(-M_PI, M_PI);
    }
    return m;
}

} // namespace

TEST_CASE("path loss arithmetic", "[lsp]")
{
    std::vector<Mpc> one{{{1e-5, 0.0}, 0.0, 0.0, 0.0}}; // |gamma|^2 = 1e-10
    CHECK(path_loss(one) == Approx(100.0).margin(1e-12));

    std::vector<Mpc> two{{{1e-5, 0.0}, 0.0, 0.0, 0.0}, {{0.0, 1e-5}, 1e-7, 0.5, -0.5}};
    CHECK(path_loss(two) == Approx(-10.0 * std::log10(2e-10)).margin(1e-12));
    CHECK(path_loss(two) == Approx(96.9897).margin(1e-4));

    std::vector<Mpc> unit{{{1.0, 0.0}, 0.0, 0.0, 0.0}};
    CHECK(path_loss(unit) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(path_loss(std::vector<Mpc>{}), std::invalid_argument);
    std::vector<Mpc> zero{{{0.0, 0.0}, 0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(path_loss(zero), std::invalid_argument);
}

TEST_CASE("path loss is monotone in component amplitude", "[lsp]")
{
    Rng rng(21);
    std::vector<Mpc> m = random_mpcs(rng, 12);
    double before = path_loss(m);
    m[3].gamma *= 1.5;
    CHECK(path_loss(m) < before);
}

TEST_CASE("delay spread closed forms", "[lsp]")
{
    std::vector<Mpc> single{{{1.0, 0.0}, 5e-7, 0.0, 0.0}};
    CHECK(delay_spread(single) == 0.0);

    std::vector<Mpc> pair{{{1.0, 0.0}, 0.0, 0.0, 0.0}, {{1.0, 0.0}, 100e-9, 0.0, 0.0}};
    CHECK(delay_spread(pair) == Approx(50e-9).epsilon(1e-12));

    // powers 3:1 at 0 and 100 ns: mean 25 ns, E[tau^2] = 2500 ns^2
    std::vector<Mpc> skew{{{std::sqrt(3.0), 0.0}, 0.0, 0.0, 0.0}, {{1.0, 0.0}, 100e-9, 0.0, 0.0}};
    CHECK(delay_spread(skew) == Approx(std::sqrt(1875.0) * 1e-9).epsilon(1e-12));

    CHECK_THROWS_AS(delay_spread(std::vector<Mpc>{}), std::invalid_argument);
}

TEST_CASE("angle spread closed forms", "[lsp]")
{
    std::vector<Mpc> single{{{1.0, 0.0}, 0.0, 0.7, -0.3}};
    CHECK(angle_spread(single, AngleSide::Departure).spread_deg == Approx(0.0).margin(1e-6));

    std::vector<Mpc> pair{{{1.0, 0.0}, 0.0, 0.0, 0.0}, {{1.0, 0.0}, 0.0, deg2rad(60.0), 0.0}};
    double expected = rad2deg(std::sqrt(-2.0 * std::log(std::cos(deg2rad(30.0)))));
    auto r = angle_spread(pair, AngleSide::Departure);
    CHECK_FALSE(r.saturated);
    CHECK(r.spread_deg == Approx(expected).epsilon(1e-9));

    // symmetric tripod forces a zero resultant: capped and flagged
    std::vector<Mpc> tripod{{{1.0, 0.0}, 0.0, 0.0, 0.0},
                            {{1.0, 0.0}, 0.0, deg2rad(120.0), 0.0},
                            {{1.0, 0.0}, 0.0, deg2rad(-120.0), 0.0}};
    auto sat = angle_spread(tripod, AngleSide::Departure);
    CHECK(sat.saturated);
    CHECK(sat.spread_deg == Approx(rad2deg(std::sqrt(-2.0 * std::log(1e-12)))).epsilon(1e-9));
}

TEST_CASE("metric invariances: scale, shift, rotation", "[lsp]")
{
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<Mpc> m = random_mpcs(rng, 2 + int(rng.integer(20)));
        double ds = delay_spread(m);
        double asd = angle_spread(m, AngleSide::Departure).spread_deg;

        std::vector<Mpc> scaled = m;
        for (Mpc &x : scaled)
            x.gamma *= std::complex<double>(3.0, -4.0);
        REQUIRE(delay_spread(scaled) == Approx(ds).margin(1e-18).epsilon(1e-12));
        REQUIRE(angle_spread(scaled, AngleSide::Departure).spread_deg ==
                Approx(asd).margin(1e-12).epsilon(1e-12));

        std::vector<Mpc> shifted = m;
        for (Mpc &x : shifted)
            x.tau_s += 3.3e-7;
        REQUIRE(delay_spread(shifted) == Approx(ds).margin(2e-16).epsilon(1e-6));

        std::vector<Mpc> rotated = m;
        for (Mpc &x : rotated)
            x.phi_t_rad = wrap_pm_pi(x.phi_t_rad + 1.1);
        REQUIRE(angle_spread(rotated, AngleSide::Departure).spread_deg ==
                Approx(asd).margin(1e-9));
    }
}

TEST_CASE("moment estimators match the direct oracle on random sets", "[lsp]")
{
    Rng rng(41);
    for (int trial = 0; trial < 1000; ++trial)
    {
        std::vector<Mpc> m = random_mpcs(rng, 1 + int(rng.integer(40)));
        REQUIRE(delay_spread(m) == Approx(oracle_ds(m)).margin(1e-18).epsilon(1e-12));
        REQUIRE(angle_spread(m, AngleSide::Departure).spread_deg ==
                Approx(oracle_as_deg(m, true)).margin(1e-12).epsilon(1e-12));
        REQUIRE(angle_spread(m, AngleSide::Arrival).spread_deg ==
                Approx(oracle_as_deg(m, false)).margin(1e-12).epsilon(1e-12));
    }
}

TEST_CASE("k-factor: pure specular and degenerate inputs", "[lsp]")
{
    std::vector<std::complex<double>> flat(64, {0.5, 0.5});
    auto k = k_factor(flat);
    CHECK(k.valid);
    CHECK(k.infinite);

    std::vector<std::complex<double>> zero(64, {0.0, 0.0});
    CHECK_THROWS_AS(k_factor(zero), std::invalid_argument);
    std::vector<std::complex<double>> tiny(1, {1.0, 0.0});
    CHECK_THROWS_AS(k_factor(tiny), std::invalid_argument);
}

TEST_CASE("k-factor: Rician and Rayleigh Monte-Carlo", "[lsp]")
{
    const int n = 510;
    auto simulate = [&](double k_db, int seeds)
    {
        double k_lin = std::pow(10.0, k_db / 10.0);
        std::vector<double> est;
        for (int s = 0; s < seeds; ++s)
        {
            Rng rng(1000 + std::uint64_t(s));
            double ramp = rng.uniform(0.0, 0.4);
            std::vector<std::complex<double>> h(n);
            for (int i = 0; i < n; ++i)
            {
                std::complex<double> spec =
                    std::polar(std::sqrt(k_lin / (k_lin + 1.0)), -2.0 * M_PI * ramp * i);
                h[std::size_t(i)] = spec + std::sqrt(1.0 / (k_lin + 1.0)) * rng.cnormal();
            }
            auto e = k_factor(h);
            if (e.valid && !e.infinite)
                est.push_back(e.k_db);
        }
        REQUIRE(est.size() > std::size_t(seeds * 9 / 10));
        return median(est);
    };

    CHECK(simulate(5.0, 200) == Approx(5.0).margin(1.5));
    CHECK(simulate(0.0, 200) == Approx(0.0).margin(1.5));

    // Rayleigh: no specular component at all
    std::vector<double> est;
    for (int s = 0; s < 200; ++s)
    {
        Rng rng(4000 + std::uint64_t(s));
        std::vector<std::complex<double>> h(n);
        for (auto &v : h)
            v = rng.cnormal();
        auto e = k_factor(h);
        est.push_back(e.valid ? e.k_db : -40.0); // deep fading counts as very low
    }
    CHECK(median(est) <= -5.0);
}

TEST_CASE("k-factor bias shrinks with the tone count", "[lsp]")
{
    auto median_bias = [&](int n)
    {
        double k_lin = std::pow(10.0, 0.5); // 5 dB
        std::vector<double> est;
        for (int s = 0; s < 150; ++s)
        {
            Rng rng(7000 + std::uint64_t(s));
            std::vector<std::complex<double>> h(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                h[std::size_t(i)] = std::sqrt(k_lin / (k_lin + 1.0)) +
                                    std::sqrt(1.0 / (k_lin + 1.0)) * rng.cnormal();
            auto e = k_factor(h);
            if (e.valid && !e.infinite)
                est.push_back(e.k_db);
        }
        return std::abs(median(est) - 5.0);
    };
    double b128 = median_bias(128);
    double b2048 = median_bias(2048);
    CHECK(b2048 <= b128 + 0.1);
    CHECK(b2048 < 0.5);
}

TEST_CASE("lsp record aggregation", "[lsp]")
{
    SoundingConfig cfg;
    cfg.num_tones = 64;
    cfg.tone_spacing_hz = 195e3;
    cfg.bandwidth_hz = 63.0 * 195e3;

    // single path: all spreads collapse, K is +inf so no k_db is stored
    std::vector<Mpc> single{{{0.5, 0.5}, 3e-7, 0.2, -0.2}};
    LspRecord r1 = make_lsp_record(7, 120.0, PropState::LoS, single, cfg);
    CHECK(r1.ds_s == 0.0);
    CHECK(r1.asa_deg == Approx(0.0).margin(1e-6));
    CHECK(r1.asd_deg == Approx(0.0).margin(1e-6));
    CHECK(r1.k_infinite);             // pure specular tone response
    CHECK_FALSE(r1.k_db.has_value()); // infinite estimate has no finite dB value

    Rng rng(9);
    std::vector<Mpc> many = random_mpcs(rng, 50);
    LspRecord r2 = make_lsp_record(8, 80.0, PropState::NLoS, many, cfg);
    CHECK_FALSE(r2.k_db.has_value()); // K only for LoS
    CHECK(r2.ds_s == Approx(oracle_ds(many)).epsilon(1e-12));
    CHECK(r2.asa_deg == Approx(oracle_as_deg(many, false)).epsilon(1e-12));
    CHECK(r2.asd_deg == Approx(oracle_as_deg(many, true)).epsilon(1e-12));
    CHECK(r2.pl_db == Approx(path_loss(many)));

    LspRecord r3 = make_lsp_record(9, 80.0, PropState::LoS, many, cfg);
    CHECK(r3.k_db.has_value()); // finite multipath mixture gives a finite K
}
