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

#include "chanlsp/pathloss_fit.hpp"
#include "chanlsp/rng.hpp"

#include <cmath>

using namespace chanlsp;
using Catch::Approx;

namespace
{
std::vector<PlSample> ci_samples(double n, double sigma, double fc_hz, int count, Rng &rng,
                                 PropState st = PropState::LoS)
{
    std::vector<PlSample> s(static_cast<std::size_t>(count));
    for (auto &x : s)
    {
        double d = std::pow(10.0, rng.uniform(1.0, std::log10(500.0)));
        x.d3d_m = d;
        x.pl_db = fspl_1m_db(fc_hz) + 10.0 * n * std::log10(d) + sigma * rng.normal();
        x.state = st;
    }
    return s;
}
} // namespace

TEST_CASE("free-space anchor", "[plfit]")
{
    CHECK(fspl_1m_db(1e9) == Approx(32.4).margin(1e-12));
    CHECK(fspl_1m_db(4.85e9) == Approx(32.4 + 20.0 * std::log10(4.85)).margin(1e-12));
    CHECK(fspl_1m_db(4.85e9) == Approx(46.11).margin(5e-3));
    CHECK(fspl_1m_db(10e9) == Approx(52.4).margin(1e-12));
    CHECK_THROWS_AS(fspl_1m_db(0.0), std::invalid_argument);
}

TEST_CASE("close-in fit: exact and noisy recovery", "[plfit]")
{
    const double fc = 4.85e9;
    Rng rng(101);

    auto clean = ci_samples(2.0, 0.0, fc, 50, rng);
    PathlossFit fit = fit_ci(clean, fc);
    CHECK(fit.n_or_alpha == Approx(2.0).margin(1e-12));
    CHECK(fit.sigma_db == Approx(0.0).margin(1e-9));
    CHECK(fit.d0_m == 1.0);

    // two points exactly on the free-space 20 log10 d law
    std::vector<PlSample> two{{10.0, fspl_1m_db(fc) + 20.0, PropState::LoS},
                              {100.0, fspl_1m_db(fc) + 40.0, PropState::LoS}};
    CHECK(fit_ci(two, fc).n_or_alpha == Approx(2.0).margin(1e-12));

    // published-value generator
    auto noisy = ci_samples(2.19, 3.60, fc, 1000, rng);
    PathlossFit nf = fit_ci(noisy, fc);
    CHECK(nf.n_or_alpha == Approx(2.19).margin(0.05));
    CHECK(nf.sigma_db == Approx(3.60).margin(0.4));
}

TEST_CASE("close-in residuals are orthogonal to the regressor", "[plfit]")
{
    const double fc = 4.85e9;
    Rng rng(103);
    auto s = ci_samples(2.81, 7.16, fc, 400, rng, PropState::NLoS);
    PathlossFit fit = fit_ci(s, fc);
    double dot = 0.0, norm = 0.0;
    for (const PlSample &x : s)
    {
        double reg = 10.0 * std::log10(x.d3d_m);
        double res = x.pl_db - fit.evaluate(x.d3d_m);
        dot += reg * res;
        norm += reg * reg;
    }
    CHECK(std::abs(dot) / norm < 1e-8);
}

TEST_CASE("floating-intercept fit: exact lines and negative intercepts", "[plfit]")
{
    auto line = [](double alpha, double beta, double d)
    { return 10.0 * alpha * std::log10(d) + beta; };

    std::vector<PlSample> s;
    for (double d : {12.0, 40.0, 90.0, 260.0})
        s.push_back({d, line(3.76, 22.96, d), PropState::NLoS});
    PathlossFit fit = fit_fi(s);
    CHECK(fit.n_or_alpha == Approx(3.76).margin(1e-10));
    CHECK(fit.beta_db == Approx(22.96).margin(1e-10));
    CHECK(fit.sigma_db == Approx(0.0).margin(1e-9));

    // free-space data pins alpha = 2 and beta at the 1 m anchor
    const double fc = 7.0e9;
    std::vector<PlSample> fs;
    for (double d : {5.0, 50.0, 500.0})
        fs.push_back({d, fspl_1m_db(fc) + 20.0 * std::log10(d), PropState::LoS});
    PathlossFit ff = fit_fi(fs);
    CHECK(ff.n_or_alpha == Approx(2.0).margin(1e-10));
    CHECK(ff.beta_db == Approx(fspl_1m_db(fc)).margin(1e-10));

    // heavily blocked microcell regime: intercept may go negative
    std::vector<PlSample> neg;
    for (double d : {30.0, 80.0, 200.0, 400.0})
        neg.push_back({d, line(5.45, -25.98, d), PropState::NLoS});
    PathlossFit nf = fit_fi(neg);
    CHECK(nf.n_or_alpha == Approx(5.45).margin(1e-10));
    CHECK(nf.beta_db == Approx(-25.98).margin(1e-10));
}

TEST_CASE("fit preconditions and degenerate inputs", "[plfit]")
{
    std::vector<PlSample> one{{10.0, 80.0, PropState::LoS}};
    CHECK_THROWS_AS(fit_ci(one, 4.85e9), std::invalid_argument);

    std::vector<PlSample> same{{10.0, 80.0, PropState::LoS}, {10.0, 81.0, PropState::LoS}};
    CHECK_THROWS_AS(fit_ci(same, 4.85e9), std::invalid_argument);
    CHECK_THROWS_AS(fit_fi(same), std::invalid_argument);

    std::vector<PlSample> mixed{{10.0, 80.0, PropState::LoS}, {50.0, 95.0, PropState::NLoS}};
    CHECK_THROWS_AS(fit_ci(mixed, 4.85e9), std::invalid_argument);
}

TEST_CASE("FI never loses to CI in residual sigma", "[plfit]")
{
    const double fc = 4.85e9;
    Rng rng(107);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto s = ci_samples(rng.uniform(1.5, 4.0), rng.uniform(0.5, 8.0), fc,
                            40 + int(rng.integer(200)), rng);
        double ci_sigma = fit_ci(s, fc).sigma_db;
        double fi_sigma = fit_fi(s).sigma_db;
        REQUIRE(fi_sigma <= ci_sigma + 1e-9);
    }
}

TEST_CASE("ABG evaluation", "[plfit]")
{
    // alpha=2, beta=32.4, gamma=2 collapses to the free-space form
    AbgParams fs{2.0, 32.4, 2.0, 0.0};
    for (double d : {1.0, 10.0, 320.0})
        for (double f : {1e9, 4.85e9, 28e9})
            REQUIRE(eval_abg(fs, f, d) ==
                    Approx(fspl_1m_db(f) + 20.0 * std::log10(d)).margin(1e-10));

    // published below-rooftop reference values
    AbgParams umi_los{2.07, 31.23, 2.06, 4.91};
    CHECK(eval_abg(umi_los, 4.85e9, 100.0) == Approx(86.76).margin(0.01));

    // frequency term vanishes at 1 GHz
    AbgParams p{3.0, 10.0, 2.5, 0.0};
    CHECK(eval_abg(p, 1e9, 50.0) == Approx(10.0 + 30.0 * std::log10(50.0)).margin(1e-12));

    // monotone in distance and frequency for positive slopes
    CHECK(eval_abg(p, 2e9, 60.0) > eval_abg(p, 2e9, 50.0));
    CHECK(eval_abg(p, 3e9, 50.0) > eval_abg(p, 2e9, 50.0));
}

TEST_CASE("multi-frequency ABG fit recovers its generator", "[plfit]")
{
    Rng rng(109);
    AbgParams truth{3.1, 18.0, 2.2, 0.0};
    std::vector<AbgSample> s;
    for (int i = 0; i < 200; ++i)
    {
        double f = std::pow(10.0, rng.uniform(0.3, 1.45)) * 1e9;
        double d = std::pow(10.0, rng.uniform(1.0, 2.7));
        s.push_back({f, d, eval_abg(truth, f, d) + 2.0 * rng.normal()});
    }
    AbgParams fit = fit_abg(s);
    CHECK(fit.alpha == Approx(truth.alpha).margin(0.1));
    CHECK(fit.beta_db == Approx(truth.beta_db).margin(1.5));
    CHECK(fit.gamma == Approx(truth.gamma).margin(0.15));

    std::vector<AbgSample> onefreq;
    for (double d : {10.0, 20.0, 50.0, 90.0})
        onefreq.push_back({2e9, d, 60.0});
    CHECK_THROWS_AS(fit_abg(onefreq), std::invalid_argument);
}
