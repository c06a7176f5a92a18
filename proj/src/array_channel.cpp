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

#include "chanlsp/array_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace chanlsp
{

void SoundingConfig::validate() const
{
    if (num_tones < 2)
        throw std::invalid_argument("SoundingConfig: num_tones must be >= 2");
    if (center_frequency_hz <= 0.0)
        throw std::invalid_argument("SoundingConfig: center_frequency must be positive");
    if (tone_spacing_hz <= 0.0 || bandwidth_hz <= 0.0)
        throw std::invalid_argument("SoundingConfig: tone_spacing and bandwidth must be positive");
    double implied = double(num_tones - 1) * tone_spacing_hz;
    if (std::abs(implied - bandwidth_hz) > 0.01 * bandwidth_hz)
        throw std::invalid_argument(
            "SoundingConfig: bandwidth must match (num_tones-1)*tone_spacing within 1%");
}

double ElementPattern::exponent() const
{
    if (hpbw_deg >= 180.0)
        return 0.0;
    double half = deg2rad(hpbw_deg) / 2.0;
    return std::log(2.0) / (-2.0 * std::log(std::cos(half)));
}

double ElementPattern::amplitude(double off_axis_rad) const
{
    double peak = std::pow(10.0, gain_dbi / 20.0);
    if (hpbw_deg >= 180.0)
        return peak;
    double floor = peak * std::pow(10.0, -30.0 / 20.0);
    double d = std::abs(wrap_pm_pi(off_axis_rad));
    if (d >= M_PI / 2.0)
        return floor;
    double g = peak * std::pow(std::cos(d), exponent());
    return std::max(g, floor);
}

void ArrayGeometry::validate() const
{
    if (element_positions.empty())
        throw std::invalid_argument("ArrayGeometry: at least one element required");
    if (element_boresights_rad.size() != element_positions.size())
        throw std::invalid_argument("ArrayGeometry: boresight count must match element count");
    if (!(pattern.hpbw_deg > 0.0 && pattern.hpbw_deg <= 360.0))
        throw std::invalid_argument("ArrayGeometry: element HPBW must lie in (0, 360] deg");
}

ArrayGeometry make_ula(int n, double spacing_m, double orientation_rad, ElementPattern pat)
{
    if (n < 1)
        throw std::invalid_argument("make_ula: need n >= 1");
    if (spacing_m <= 0.0)
        throw std::invalid_argument("make_ula: spacing must be positive");
    ArrayGeometry g;
    g.kind = ArrayKind::Ula;
    g.orientation_rad = orientation_rad;
    g.pattern = pat;
    // axis perpendicular to boresight: boresight is +x in the array frame,
    // elements along +y, centered
    for (int m = 0; m < n; ++m)
    {
        double y = (double(m) - 0.5 * double(n - 1)) * spacing_m;
        g.element_positions.emplace_back(0.0, y);
        g.element_boresights_rad.push_back(0.0);
    }
    return g;
}

ArrayGeometry make_uca(int n, double radius_m, double orientation_rad, ElementPattern pat)
{
    if (n < 1)
        throw std::invalid_argument("make_uca: need n >= 1");
    if (radius_m <= 0.0)
        throw std::invalid_argument("make_uca: radius must be positive");
    ArrayGeometry g;
    g.kind = ArrayKind::Uca;
    g.orientation_rad = orientation_rad;
    g.pattern = pat;
    for (int m = 0; m < n; ++m)
    {
        double az = 2.0 * M_PI * double(m) / double(n);
        g.element_positions.emplace_back(radius_m * std::cos(az), radius_m * std::sin(az));
        g.element_boresights_rad.push_back(wrap_pm_pi(az));
    }
    return g;
}

void CtfSnapshot::validate_finite() const
{
    if (!h.allFinite())
        throw std::invalid_argument("CtfSnapshot: non-finite entries");
}

void BeamformerConfig::validate() const
{
    if (!(delta_t_deg > 0.0 && delta_t_deg <= b_t_deg))
        throw std::invalid_argument("BeamformerConfig: need 0 < delta_t <= b_t");
    if (!(delta_r_deg > 0.0 && delta_r_deg <= b_r_deg))
        throw std::invalid_argument("BeamformerConfig: need 0 < delta_r <= b_r");
    if (scan_t.width_deg() < 0.0 || scan_r.width_deg() < 0.0)
        throw std::invalid_argument("BeamformerConfig: empty scan range");
}

namespace
{
std::vector<double> make_grid(const AngleSector &s, double step)
{
    std::vector<double> g;
    // half-step tolerance so a range like [-180, 180] does not duplicate the
    // wrap-around pointing
    for (double a = s.lo_deg; a <= s.hi_deg + 1e-9; a += step)
    {
        if (s.width_deg() >= 360.0 - 1e-9 && a >= s.lo_deg + 360.0 - step / 2.0)
            break;
        g.push_back(a);
    }
    return g;
}
} // namespace

std::vector<double> BeamformerConfig::grid_t_deg() const { return make_grid(scan_t, delta_t_deg); }
std::vector<double> BeamformerConfig::grid_r_deg() const { return make_grid(scan_r, delta_r_deg); }

Eigen::VectorXcd steering_vector(const ArrayGeometry &array, double phi_rad, double frequency_hz)
{
    if (!std::isfinite(phi_rad))
        throw std::invalid_argument("steering_vector: non-finite azimuth");
    if (frequency_hz <= 0.0)
        throw std::invalid_argument("steering_vector: frequency must be positive");
    const int m = array.size();
    const double lambda = speed_of_light / frequency_hz;
    const Eigen::Vector2d u(std::cos(phi_rad), std::sin(phi_rad));
    Eigen::VectorXcd a(m);
    for (int i = 0; i < m; ++i)
    {
        double phase = 2.0 * M_PI / lambda * array.element_positions[i].dot(u);
        double g = array.pattern.amplitude(phi_rad - array.element_boresights_rad[i]);
        a(i) = std::polar(g, phase);
    }
    return a;
}

Eigen::MatrixXcd idft_matrix(int num_tones)
{
    const int n = num_tones;
    Eigen::MatrixXcd w(n, n);
    const double scale = 1.0 / std::sqrt(double(n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            w(k, i) = std::polar(scale, 2.0 * M_PI * double(i) * double(k) / double(n));
    return w;
}

CtfSnapshot synthesize_ctf(std::span<const Mpc> mpcs, const ArrayGeometry &tx,
                           const ArrayGeometry &rx, const SoundingConfig &cfg)
{
    cfg.validate();
    tx.validate();
    rx.validate();
    CtfSnapshot snap;
    snap.n_rx = rx.size();
    snap.n_tx = tx.size();
    snap.n_tones = cfg.num_tones;
    snap.h = Eigen::MatrixXcd::Zero(cfg.num_tones, snap.n_rx * snap.n_tx);

    const double fc = cfg.center_frequency_hz;
    Eigen::RowVectorXcd outer(snap.n_rx * snap.n_tx);
    Eigen::VectorXcd phasor(cfg.num_tones);
    for (const Mpc &m : mpcs)
    {
        if (!std::isfinite(m.tau_s) || m.tau_s < 0.0)
            throw std::invalid_argument("synthesize_ctf: component delay must be finite and >= 0");
        if (m.tau_s > cfg.unambiguous_delay_s())
            snap.aliased_delay = true;
        Eigen::VectorXcd at = steering_vector(tx, m.phi_t_rad, fc);
        Eigen::VectorXcd ar = steering_vector(rx, m.phi_r_rad, fc);
        for (int j = 0; j < snap.n_tx; ++j)
            for (int i = 0; i < snap.n_rx; ++i)
                outer(j * snap.n_rx + i) = ar(i) * at(j);
        for (int i = 0; i < cfg.num_tones; ++i)
            phasor(i) = m.gamma * std::polar(1.0, -2.0 * M_PI * cfg.tone_frequency(i) * m.tau_s);
        snap.h.noalias() += phasor * outer;
    }
    return snap;
}

DirectionalSpectrum beamform(const CtfSnapshot &snapshot, const ArrayGeometry &tx,
                             const ArrayGeometry &rx, const BeamformerConfig &bf,
                             const SoundingConfig &cfg)
{
    bf.validate();
    if (snapshot.n_rx != rx.size() || snapshot.n_tx != tx.size() ||
        snapshot.n_tones != cfg.num_tones)
        throw std::invalid_argument("beamform: snapshot shape does not match arrays/config");

    DirectionalSpectrum sp;
    sp.angles_t_deg = bf.grid_t_deg();
    sp.angles_r_deg = bf.grid_r_deg();
    sp.n_delay = snapshot.n_tones;
    sp.n_t = int(sp.angles_t_deg.size());
    sp.n_r = int(sp.angles_r_deg.size());
    sp.delay_step_s = cfg.delay_bin_s();
    sp.p.assign(std::size_t(sp.n_delay) * sp.n_t * sp.n_r, 0.0);

    const double fc = cfg.center_frequency_hz;
    const int nr = snapshot.n_rx, nt = snapshot.n_tx, n = snapshot.n_tones;

    // steering matrices on the grids and the gain-compensation norms
    Eigen::MatrixXcd at(nt, sp.n_t), ar(nr, sp.n_r);
    Eigen::VectorXd ct(sp.n_t), cr(sp.n_r);
    for (int j = 0; j < sp.n_t; ++j)
    {
        at.col(j) = steering_vector(tx, deg2rad(sp.angles_t_deg[j]), fc);
        ct(j) = at.col(j).squaredNorm();
    }
    for (int i = 0; i < sp.n_r; ++i)
    {
        ar.col(i) = steering_vector(rx, deg2rad(sp.angles_r_deg[i]), fc);
        cr(i) = ar.col(i).squaredNorm();
    }

    const double eps = 1e-12;
    std::vector<char> t_dead(sp.n_t, 0), r_dead(sp.n_r, 0);
    for (int j = 0; j < sp.n_t; ++j)
        t_dead[j] = ct(j) <= eps;
    for (int i = 0; i < sp.n_r; ++i)
        r_dead[i] = cr(i) <= eps;

    // delay transform first (beamforming and the tone-wise IDFT commute)
    Eigen::MatrixXcd hd = idft_matrix(n) * snapshot.h; // (n_delay) x (nr*nt)

    Eigen::MatrixXcd hk(nr, nt), g1(sp.n_r, nt), g2(sp.n_r, sp.n_t);
    for (int k = 0; k < n; ++k)
    {
        for (int j = 0; j < nt; ++j)
            hk.col(j) = hd.row(k).segment(j * nr, nr).transpose();
        g1.noalias() = ar.adjoint() * hk;
        g2.noalias() = g1 * at.conjugate();
        for (int it = 0; it < sp.n_t; ++it)
            for (int ir = 0; ir < sp.n_r; ++ir)
            {
                if (t_dead[it] || r_dead[ir])
                {
                    sp.at(k, it, ir) = 0.0;
                    if (k == 0)
                        ++sp.flagged_cells;
                    continue;
                }
                sp.at(k, it, ir) = std::norm(g2(ir, it)) / (ct(it) * ct(it) * cr(ir) * cr(ir));
            }
    }
    return sp;
}

Pdp pdp(const DirectionalSpectrum &spectrum, const BeamformerConfig &bf)
{
    if (int(bf.grid_t_deg().size()) != spectrum.n_t || int(bf.grid_r_deg().size()) != spectrum.n_r)
        throw std::invalid_argument("pdp: beamformer config does not match spectrum grids");
    Pdp out;
    out.delay_step_s = spectrum.delay_step_s;
    out.values.assign(spectrum.n_delay, 0.0);
    const double scale =
        (bf.delta_t_deg * bf.delta_r_deg) / (bf.b_t_deg * bf.b_r_deg);
    for (int k = 0; k < spectrum.n_delay; ++k)
    {
        double s = 0.0;
        for (int it = 0; it < spectrum.n_t; ++it)
            for (int ir = 0; ir < spectrum.n_r; ++ir)
                s += spectrum.at(k, it, ir);
        out.values[k] = scale * s;
    }
    return out;
}

double Pdp::total_energy() const
{
    double s = 0.0;
    for (double v : values)
        s += v;
    return s;
}

} // namespace chanlsp
