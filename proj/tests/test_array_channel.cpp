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

#include "chanlsp/array_channel.hpp"
#include "chanlsp/rng.hpp"

#include <cmath>

using namespace chanlsp;
using Catch::Approx;

namespace
{

SoundingConfig small_cfg()
{
    SoundingConfig c;
    c.center_frequency_hz = 4.85001e9;
    c.num_tones = 64;
    c.tone_spacing_hz = 195e3;
    c.bandwidth_hz = 63.0 * 195e3;
    return c;
}

ElementPattern isotropic() { return {360.0, 0.0}; }

// Straight evaluation of the beamform/PDP chain from the definitions: for
// every pointing pair compute the gain-compensated tone response, transform
// with an explicit unitary IDFT sum, square, and sum with the beam-ratio
// scale. Independent of the production path.
std::vector<double> naive_pdp(const CtfSnapshot &snap, const ArrayGeometry &tx,
                              const ArrayGeometry &rx, const BeamformerConfig &bf,
                              const SoundingConfig &cfg)
{
    auto gt = bf.grid_t_deg();
    auto gr = bf.grid_r_deg();
    const int n = cfg.num_tones;
    std::vector<double> pdp_vals(std::size_t(n), 0.0);
    for (double at_deg : gt)
        for (double ar_deg : gr)
        {
            Eigen::VectorXcd at = steering_vector(tx, deg2rad(at_deg), cfg.center_frequency_hz);
            Eigen::VectorXcd ar = steering_vector(rx, deg2rad(ar_deg), cfg.center_frequency_hz);
            double ct = at.squaredNorm(), cr = ar.squaredNorm();
            std::vector<std::complex<double>> g(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
            {
                std::complex<double> acc = 0.0;
                for (int mr = 0; mr < snap.n_rx; ++mr)
                    for (int mt = 0; mt < snap.n_tx; ++mt)
                        acc += std::conj(ar(mr)) * snap.at(mr, mt, i) * std::conj(at(mt));
                g[std::size_t(i)] = acc / (ct * cr);
            }
            for (int k = 0; k < n; ++k)
            {
                std::complex<double> acc = 0.0;
                for (int i = 0; i < n; ++i)
                    acc += g[std::size_t(i)] *
                           std::polar(1.0 / std::sqrt(double(n)),
                                      2.0 * M_PI * double(i) * double(k) / double(n));
                pdp_vals[std::size_t(k)] += std::norm(acc);
            }
        }
    double scale = bf.delta_t_deg * bf.delta_r_deg / (bf.b_t_deg * bf.b_r_deg);
    for (double &v : pdp_vals)
        v *= scale;
    return pdp_vals;
}

} // namespace

TEST_CASE("sounding config validation and tone grid", "[array]")
{
    SoundingConfig c = small_cfg();
    c.validate();
    CHECK(c.tone_frequency(0) == Approx(c.center_frequency_hz - c.bandwidth_hz / 2.0));
    CHECK(c.tone_frequency(1) - c.tone_frequency(0) == Approx(195e3));
    CHECK(c.delay_bin_s() == Approx(1.0 / (64.0 * 195e3)));

    SoundingConfig bad = c;
    bad.bandwidth_hz = 2.0 * c.bandwidth_hz;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.num_tones = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("paper sounding grid has the documented spans", "[array]")
{
    SoundingConfig c; // defaults follow the measurement configuration
    c.validate();
    CHECK(c.num_tones == 510);
    CHECK(c.unambiguous_delay_s() == Approx(5.128e-6).epsilon(1e-3));
    CHECK(c.delay_bin_s() == Approx(10.055e-9).epsilon(1e-3));
}

TEST_CASE("element pattern hits half power at the beamwidth", "[array]")
{
    ElementPattern p{90.0, 4.0};
    double peak = p.amplitude(0.0);
    CHECK(peak == Approx(std::pow(10.0, 4.0 / 20.0)));
    double edge = p.amplitude(deg2rad(45.0));
    CHECK(edge * edge == Approx(peak * peak / 2.0).epsilon(1e-12));
    // cos^1 for a 90 deg beam
    CHECK(p.exponent() == Approx(1.0));
    // backlobe floor 30 dB below peak
    CHECK(p.amplitude(M_PI) == Approx(peak * std::pow(10.0, -1.5)));
    ElementPattern iso = isotropic();
    CHECK(iso.amplitude(2.0) == Approx(1.0));
}

TEST_CASE("steering vector basics", "[array]")
{
    double fc = 4.85001e9;
    double lambda = speed_of_light / fc;

    ArrayGeometry single = make_ula(1, lambda / 2.0, 0.0, isotropic());
    Eigen::VectorXcd a1 = steering_vector(single, 0.7, fc);
    CHECK(a1.size() == 1);
    CHECK(std::arg(a1(0)) == Approx(0.0).margin(1e-12));

    ArrayGeometry duo = make_ula(2, lambda / 2.0, 0.0, isotropic());
    // broadside: wave direction orthogonal to the baseline, equal phases
    Eigen::VectorXcd ab = steering_vector(duo, 0.0, fc);
    CHECK(std::arg(ab(0)) == Approx(std::arg(ab(1))).margin(1e-12));
    // endfire: half-wavelength baseline gives a pi phase step
    Eigen::VectorXcd ae = steering_vector(duo, M_PI / 2.0, fc);
    double dphi = std::arg(ae(1) * std::conj(ae(0)));
    CHECK(std::abs(dphi) == Approx(M_PI).margin(1e-9));

    CHECK_THROWS_AS(steering_vector(duo, std::nan(""), fc), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector(duo, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("ULA steering phases flip sign under mirrored azimuth", "[array]")
{
    double fc = 4.85001e9;
    ArrayGeometry ula = make_ula(8, 0.030917, 0.0, isotropic());
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        double phi = rng.uniform(-1.2, 1.2);
        Eigen::VectorXcd ap = steering_vector(ula, phi, fc);
        Eigen::VectorXcd am = steering_vector(ula, -phi, fc);
        for (int m = 0; m < 8; ++m)
            REQUIRE(std::arg(ap(m)) == Approx(-std::arg(am(m))).margin(1e-9));
    }
}

TEST_CASE("synthesize_ctf: empty list, linearity, tone phase ramp", "[array]")
{
    SoundingConfig cfg = small_cfg();
    ArrayGeometry tx = make_ula(4, cfg.wavelength_m() / 2.0, 0.0, isotropic());
    ArrayGeometry rx = make_uca(4, cfg.wavelength_m() / 2.0, 0.0, isotropic());

    CtfSnapshot zero = synthesize_ctf({}, tx, rx, cfg);
    CHECK(zero.total_power() == 0.0);

    std::vector<Mpc> a{{{1.0, 0.3}, 200e-9, 0.1, -0.4}};
    std::vector<Mpc> b{{{-0.2, 0.7}, 350e-9, -0.3, 1.0}};
    std::vector<Mpc> both = a;
    both.push_back(b[0]);
    CtfSnapshot ha = synthesize_ctf(a, tx, rx, cfg);
    CtfSnapshot hb = synthesize_ctf(b, tx, rx, cfg);
    CtfSnapshot hab = synthesize_ctf(both, tx, rx, cfg);
    double rel = (hab.h - (ha.h + hb.h)).norm() / hab.h.norm();
    CHECK(rel < 1e-12);

    // single component: adjacent-tone phase increment -2 pi df tau
    std::vector<Mpc> one{{{1.0, 0.0}, 100e-9, 0.0, 0.0}};
    CtfSnapshot h1 = synthesize_ctf(one, tx, rx, cfg);
    double expected = -2.0 * M_PI * cfg.tone_spacing_hz * 100e-9;
    for (int i = 0; i + 1 < cfg.num_tones; ++i)
    {
        double inc = std::arg(h1.at(0, 0, i + 1) * std::conj(h1.at(0, 0, i)));
        REQUIRE(inc == Approx(expected).margin(1e-12));
    }
    CHECK(expected == Approx(-0.1225).margin(2e-4));

    // delay beyond the unambiguous span flags the snapshot
    std::vector<Mpc> late{{{1.0, 0.0}, 2.0 / cfg.tone_spacing_hz, 0.0, 0.0}};
    CtfSnapshot hl = synthesize_ctf(late, tx, rx, cfg);
    CHECK(hl.aliased_delay);
    CHECK_FALSE(h1.aliased_delay);
}

TEST_CASE("beamform: zero channel and single-component peak", "[array]")
{
    SoundingConfig cfg = small_cfg();
    ArrayGeometry tx = make_ula(8, cfg.wavelength_m() / 2.0, 0.0, isotropic());
    ArrayGeometry rx = make_uca(8, 0.653 * cfg.wavelength_m(), 0.0, isotropic());
    BeamformerConfig bf;

    CtfSnapshot zero = synthesize_ctf({}, tx, rx, cfg);
    DirectionalSpectrum sp0 = beamform(zero, tx, rx, bf, cfg);
    for (double v : sp0.p)
        REQUIRE(v == 0.0);

    // component on the delay grid and on both pointing grids
    double tau = 8.0 * cfg.delay_bin_s();
    std::vector<Mpc> one{{{1.0, 0.0}, tau, 0.0, 0.0}};
    CtfSnapshot h = synthesize_ctf(one, tx, rx, cfg);
    DirectionalSpectrum sp = beamform(h, tx, rx, bf, cfg);

    int bk = 0, bt = 0, br = 0;
    double best = -1.0;
    for (int k = 0; k < sp.n_delay; ++k)
        for (int it = 0; it < sp.n_t; ++it)
            for (int ir = 0; ir < sp.n_r; ++ir)
                if (sp.at(k, it, ir) > best)
                {
                    best = sp.at(k, it, ir);
                    bk = k;
                    bt = it;
                    br = ir;
                }
    CHECK(bk == 8);
    CHECK(sp.angles_t_deg[std::size_t(bt)] == Approx(0.0).margin(1e-12));
    CHECK(sp.angles_r_deg[std::size_t(br)] == Approx(0.0).margin(1e-12));
    // matched unit-gain pointing carries the component power times num_tones
    CHECK(best == Approx(double(cfg.num_tones)).epsilon(1e-9));
}

TEST_CASE("beamform: two equal components split in arrival angle", "[array]")
{
    SoundingConfig cfg = small_cfg();
    ArrayGeometry tx = make_ula(8, cfg.wavelength_m() / 2.0, 0.0, isotropic());
    ArrayGeometry rx = make_uca(8, 0.653 * cfg.wavelength_m(), 0.0, isotropic());
    BeamformerConfig bf;

    double tau = 6.0 * cfg.delay_bin_s();
    std::vector<Mpc> two{{{1.0, 0.0}, tau, 0.0, deg2rad(30.0)},
                         {{0.0, 1.0}, tau, 0.0, deg2rad(-30.0)}};
    CtfSnapshot h = synthesize_ctf(two, tx, rx, cfg);
    DirectionalSpectrum sp = beamform(h, tx, rx, bf, cfg);

    // strongest Rx pointing near +30 and near -30, each within one grid step
    auto peak_near = [&](double target_deg)
    {
        double best = -1.0;
        double best_ang = 1e9;
        for (int k = 0; k < sp.n_delay; ++k)
            for (int it = 0; it < sp.n_t; ++it)
                for (int ir = 0; ir < sp.n_r; ++ir)
                {
                    double ang = sp.angles_r_deg[std::size_t(ir)];
                    if (std::abs(ang - target_deg) <= bf.delta_r_deg + 1e-9 &&
                        sp.at(k, it, ir) > best)
                    {
                        best = sp.at(k, it, ir);
                        best_ang = ang;
                    }
                }
        return std::pair<double, double>(best, best_ang);
    };
    auto [p_pos, a_pos] = peak_near(30.0);
    auto [p_neg, a_neg] = peak_near(-30.0);
    CHECK(p_pos > 0.0);
    CHECK(p_neg > 0.0);
    CHECK(p_pos == Approx(p_neg).epsilon(0.05));
    CHECK(std::abs(a_pos - 30.0) <= bf.delta_r_deg);
    CHECK(std::abs(a_neg + 30.0) <= bf.delta_r_deg);
}

TEST_CASE("pdp scale factor and brute-force oracle", "[array]")
{
    SoundingConfig cfg = small_cfg();
    cfg.num_tones = 32;
    cfg.bandwidth_hz = 31.0 * cfg.tone_spacing_hz;
    ArrayGeometry tx = make_ula(4, cfg.wavelength_m() / 2.0, 0.0, ElementPattern{90.0, 4.0});
    ArrayGeometry rx = make_uca(4, 0.653 * cfg.wavelength_m(), 0.0, ElementPattern{74.0, 6.5});
    BeamformerConfig bf; // 6 deg steps, 12/24 deg beams

    CHECK(bf.delta_t_deg * bf.delta_r_deg / (bf.b_t_deg * bf.b_r_deg) == Approx(0.125));

    std::vector<Mpc> mpcs{{{0.8, 0.1}, 3.0 * cfg.delay_bin_s() + 11e-9, 0.25, -1.2},
                          {{0.0, 0.4}, 9.0 * cfg.delay_bin_s(), -0.4, 0.9}};
    CtfSnapshot h = synthesize_ctf(mpcs, tx, rx, cfg);
    DirectionalSpectrum sp = beamform(h, tx, rx, bf, cfg);
    Pdp p = pdp(sp, bf);

    REQUIRE(int(p.values.size()) == cfg.num_tones);
    for (double v : p.values)
        REQUIRE(v >= 0.0);

    std::vector<double> oracle = naive_pdp(h, tx, rx, bf, cfg);
    for (int k = 0; k < cfg.num_tones; ++k)
        REQUIRE(p.values[std::size_t(k)] ==
                Approx(oracle[std::size_t(k)]).margin(1e-12).epsilon(1e-9));

    CtfSnapshot zero = synthesize_ctf({}, tx, rx, cfg);
    Pdp pz = pdp(beamform(zero, tx, rx, bf, cfg), bf);
    CHECK(pz.total_energy() == 0.0);
}

TEST_CASE("Parseval: tone power equals delay power at the matched pointing", "[array]")
{
    SoundingConfig cfg = small_cfg();
    ArrayGeometry tx = make_ula(8, cfg.wavelength_m() / 2.0, 0.0, isotropic());
    ArrayGeometry rx = make_uca(8, 0.653 * cfg.wavelength_m(), 0.0, isotropic());

    // off-grid delay spreads energy across bins; totals must still match
    std::vector<Mpc> one{{{0.7, -0.2}, 5.37 * cfg.delay_bin_s(), deg2rad(12.0), deg2rad(42.0)}};
    CtfSnapshot h = synthesize_ctf(one, tx, rx, cfg);
    BeamformerConfig bf;
    DirectionalSpectrum sp = beamform(h, tx, rx, bf, cfg);

    // argmax pointing
    int bt = 0, br = 0;
    double best = -1.0;
    for (int k = 0; k < sp.n_delay; ++k)
        for (int it = 0; it < sp.n_t; ++it)
            for (int ir = 0; ir < sp.n_r; ++ir)
                if (sp.at(k, it, ir) > best)
                {
                    best = sp.at(k, it, ir);
                    bt = it;
                    br = ir;
                }

    // tone-domain beamformed trace at that pointing
    Eigen::VectorXcd at =
        steering_vector(tx, deg2rad(sp.angles_t_deg[std::size_t(bt)]), cfg.center_frequency_hz);
    Eigen::VectorXcd ar =
        steering_vector(rx, deg2rad(sp.angles_r_deg[std::size_t(br)]), cfg.center_frequency_hz);
    double ct = at.squaredNorm(), cr = ar.squaredNorm();
    double tone_power = 0.0;
    for (int i = 0; i < cfg.num_tones; ++i)
    {
        std::complex<double> acc = 0.0;
        for (int mr = 0; mr < 8; ++mr)
            for (int mt = 0; mt < 8; ++mt)
                acc += std::conj(ar(mr)) * h.at(mr, mt, i) * std::conj(at(mt));
        tone_power += std::norm(acc / (ct * cr));
    }
    double delay_power = 0.0;
    for (int k = 0; k < sp.n_delay; ++k)
        delay_power += sp.at(k, bt, br);
    CHECK(delay_power == Approx(tone_power).epsilon(1e-9));
}

TEST_CASE("beamformer peak lands within one grid cell of the component", "[array]")
{
    SoundingConfig cfg = small_cfg();
    ArrayGeometry tx = make_ula(8, cfg.wavelength_m() / 2.0, 0.0, ElementPattern{90.0, 4.0});
    ArrayGeometry rx = make_uca(8, 0.653 * cfg.wavelength_m(), 0.0, ElementPattern{74.0, 6.5});
    BeamformerConfig bf;

    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial)
    {
        Mpc m;
        m.gamma = {1.0, 0.0};
        m.tau_s = rng.uniform(2.0, 20.0) * cfg.delay_bin_s();
        m.phi_t_rad = deg2rad(rng.uniform(-45.0, 45.0));
        m.phi_r_rad = deg2rad(rng.uniform(-175.0, 175.0));
        CtfSnapshot h = synthesize_ctf(std::vector<Mpc>{m}, tx, rx, cfg);
        DirectionalSpectrum sp = beamform(h, tx, rx, bf, cfg);
        int bk = 0, bt = 0, br = 0;
        double best = -1.0;
        for (int k = 0; k < sp.n_delay; ++k)
            for (int it = 0; it < sp.n_t; ++it)
                for (int ir = 0; ir < sp.n_r; ++ir)
                    if (sp.at(k, it, ir) > best)
                    {
                        best = sp.at(k, it, ir);
                        bk = k;
                        bt = it;
                        br = ir;
                    }
        REQUIRE(std::abs(double(bk) * cfg.delay_bin_s() - m.tau_s) <= cfg.delay_bin_s());
        REQUIRE(std::abs(sp.angles_t_deg[std::size_t(bt)] - rad2deg(m.phi_t_rad)) <=
                bf.delta_t_deg);
        double dr = std::abs(wrap_pm_pi(deg2rad(sp.angles_r_deg[std::size_t(br)]) - m.phi_r_rad));
        REQUIRE(rad2deg(dr) <= bf.delta_r_deg);
    }
}

TEST_CASE("beamform shape validation", "[array]")
{
    SoundingConfig cfg = small_cfg();
    ArrayGeometry tx = make_ula(4, cfg.wavelength_m() / 2.0, 0.0, isotropic());
    ArrayGeometry rx = make_uca(4, 0.653 * cfg.wavelength_m(), 0.0, isotropic());
    ArrayGeometry wrong = make_uca(6, 0.653 * cfg.wavelength_m(), 0.0, isotropic());
    CtfSnapshot h = synthesize_ctf({}, tx, rx, cfg);
    BeamformerConfig bf;
    CHECK_THROWS_AS(beamform(h, tx, wrong, bf, cfg), std::invalid_argument);

    BeamformerConfig bad;
    bad.delta_t_deg = 20.0; // step above the beamwidth
    CHECK_THROWS_AS(beamform(h, tx, rx, bad, cfg), std::invalid_argument);
}
