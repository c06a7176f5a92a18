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

#include "chanlsp/lsp_metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chanlsp
{

namespace
{
double total_power(std::span<const Mpc> mpcs)
{
    double p = 0.0;
    for (const Mpc &m : mpcs)
        p += m.power();
    return p;
}
} // namespace

double path_loss(std::span<const Mpc> mpcs)
{
    double p = total_power(mpcs);
    if (!(p > 0.0))
        throw std::invalid_argument("path_loss: no detected power");
    return -10.0 * std::log10(p);
}

double delay_spread(std::span<const Mpc> mpcs)
{
    double p = total_power(mpcs);
    if (!(p > 0.0))
        throw std::invalid_argument("delay_spread: no detected power");
    double m1 = 0.0, m2 = 0.0;
    for (const Mpc &m : mpcs)
    {
        m1 += m.tau_s * m.power();
        m2 += m.tau_s * m.tau_s * m.power();
    }
    m1 /= p;
    m2 /= p;
    double var = m2 - m1 * m1;
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

AngleSpreadResult angle_spread(std::span<const Mpc> mpcs, AngleSide side)
{
    double p = total_power(mpcs);
    if (!(p > 0.0))
        throw std::invalid_argument("angle_spread: no detected power");
    std::complex<double> resultant(0.0, 0.0);
    for (const Mpc &m : mpcs)
    {
        double phi = side == AngleSide::Departure ? m.phi_t_rad : m.phi_r_rad;
        resultant += m.power() * std::polar(1.0, phi);
    }
    double r = std::abs(resultant) / p;
    AngleSpreadResult out;
    constexpr double r_floor = 1e-12;
    if (r < r_floor)
    {
        r = r_floor;
        out.saturated = true;
    }
    if (r > 1.0)
        r = 1.0; // rounding guard
    out.spread_deg = rad2deg(std::sqrt(-2.0 * std::log(r)));
    return out;
}

KfactorEstimate k_factor(std::span<const std::complex<double>> ctf)
{
    const std::size_t n = ctf.size();
    if (n < 2)
        throw std::invalid_argument("k_factor: need at least two tone samples");
    double s2 = 0.0, s4 = 0.0;
    for (const auto &h : ctf)
    {
        double a2 = std::norm(h);
        s2 += a2;
        s4 += a2 * a2;
    }
    if (!(s2 > 0.0))
        throw std::invalid_argument("k_factor: zero input");

    KfactorEstimate e;
    e.g_a = s2 / double(n);
    e.g_v = (s4 - double(n) * e.g_a * e.g_a) / double(n - 1);

    double disc = e.g_a * e.g_a - e.g_v;
    if (disc < 0.0)
    {
        e.valid = false; // moment estimate undefined in deep fading
        return e;
    }
    double root = std::sqrt(disc);
    double denom = e.g_a - root;
    e.valid = true;
    if (denom <= 0.0)
    {
        e.infinite = true;
        e.k_linear = std::numeric_limits<double>::infinity();
        e.k_db = std::numeric_limits<double>::infinity();
        return e;
    }
    e.k_linear = root / denom;
    e.k_db = 10.0 * std::log10(e.k_linear);
    return e;
}

Eigen::VectorXcd synthesize_omni_ctf(std::span<const Mpc> mpcs, const SoundingConfig &cfg)
{
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(cfg.num_tones);
    for (const Mpc &m : mpcs)
        for (int i = 0; i < cfg.num_tones; ++i)
            h(i) += m.gamma * std::polar(1.0, -2.0 * M_PI * cfg.tone_frequency(i) * m.tau_s);
    return h;
}

LspRecord make_lsp_record(long snapshot_id, double d3d_m, PropState state,
                          std::span<const Mpc> mpcs, const SoundingConfig &cfg)
{
    LspRecord r;
    r.snapshot_id = snapshot_id;
    r.d3d_m = d3d_m;
    r.state = state;
    r.pl_db = path_loss(mpcs);
    r.ds_s = delay_spread(mpcs);
    auto asa = angle_spread(mpcs, AngleSide::Arrival);
    auto asd = angle_spread(mpcs, AngleSide::Departure);
    r.asa_deg = asa.spread_deg;
    r.asd_deg = asd.spread_deg;
    r.asa_saturated = asa.saturated;
    r.asd_saturated = asd.saturated;
    if (state == PropState::LoS)
    {
        Eigen::VectorXcd h = synthesize_omni_ctf(mpcs, cfg);
        auto k = k_factor(std::span<const std::complex<double>>(h.data(), std::size_t(h.size())));
        if (k.valid && k.infinite)
            r.k_infinite = true;
        else if (k.valid)
            r.k_db = k.k_db;
    }
    return r;
}

} // namespace chanlsp
