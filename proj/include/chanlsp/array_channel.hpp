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

#ifndef chanlsp_array_channel_H
#define chanlsp_array_channel_H

#include "chanlsp/types.hpp"

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace chanlsp
{

// Multitone sounding grid. Tones sit at f_i = center - bandwidth/2 + i*spacing,
// i = 0..N-1; the implied delay grid is tau_k = k/(N*spacing) with an
// unambiguous span of 1/spacing. The waveform is modeled as an ideal flat
// multitone, so its autocorrelation is the periodic sinc implied by the grid.
struct SoundingConfig
{
    double center_frequency_hz = 4.85001e9;
    int num_tones = 510;
    double tone_spacing_hz = 195e3;
    double bandwidth_hz = 99.9e6;

    void validate() const; // throws std::invalid_argument

    double tone_frequency(int i) const
    {
        return center_frequency_hz - bandwidth_hz / 2.0 + double(i) * tone_spacing_hz;
    }
    double delay_bin_s() const { return 1.0 / (double(num_tones) * tone_spacing_hz); }
    double unambiguous_delay_s() const { return 1.0 / tone_spacing_hz; }
    double wavelength_m() const { return speed_of_light / center_frequency_hz; }
};

// One-parameter element amplitude pattern: g(theta) = sqrt(G) * cos(theta)^q
// with q solved from the half-power beamwidth (g(HPBW/2)^2 = G/2) and a
// -30 dB amplitude floor toward the back. HPBW >= 180 deg means isotropic.
struct ElementPattern
{
    double hpbw_deg = 360.0;
    double gain_dbi = 0.0;

    double exponent() const;                   // the cos-power q
    double amplitude(double off_axis_rad) const; // linear amplitude
};

enum class ArrayKind
{
    Ula,
    Uca
};

struct ArrayGeometry
{
    ArrayKind kind = ArrayKind::Ula;
    std::vector<Eigen::Vector2d> element_positions;  // meters, array frame
    std::vector<double> element_boresights_rad;      // relative to array boresight
    ElementPattern pattern;
    double orientation_rad = 0.0; // array boresight in the global frame

    int size() const { return int(element_positions.size()); }
    void validate() const;
};

// ULA with its axis perpendicular to the boresight, elements centered on the
// phase reference; every element looks along the boresight.
ArrayGeometry make_ula(int n, double spacing_m, double orientation_rad, ElementPattern pat);

// UCA with radially-pointing elements, element m at azimuth 2*pi*m/n in the
// array frame.
ArrayGeometry make_uca(int n, double radius_m, double orientation_rad, ElementPattern pat);

// Plane-wave component of the parametric channel: complex weight, delay and
// departure/arrival azimuths (array-frame, [-pi, pi)).
struct Mpc
{
    std::complex<double> gamma;
    double tau_s = 0.0;
    double phi_t_rad = 0.0;
    double phi_r_rad = 0.0;

    double power() const { return std::norm(gamma); }
};

// Measured or synthesized MIMO channel transfer function on the tone grid.
// Storage is (num_tones) x (n_rx*n_tx); column tx*n_rx + rx, so one row
// reshapes column-major into the (rx, tx) matrix of that tone.
struct CtfSnapshot
{
    int n_rx = 0;
    int n_tx = 0;
    int n_tones = 0;
    Eigen::MatrixXcd h;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    double d3d_m = 0.0;
    PropState state = PropState::NLoS;
    bool valid = true;
    long snapshot_id = 0;
    bool aliased_delay = false; // some synthesized tau exceeded 1/tone_spacing

    std::complex<double> &at(int rx, int tx, int tone) { return h(tone, tx * n_rx + rx); }
    const std::complex<double> &at(int rx, int tx, int tone) const
    {
        return h(tone, tx * n_rx + rx);
    }
    double total_power() const { return h.squaredNorm(); }
    void validate_finite() const;
};

struct AngleSector
{
    double lo_deg = -180.0;
    double hi_deg = 180.0;

    bool contains_deg(double a) const { return a >= lo_deg && a <= hi_deg; }
    double width_deg() const { return hi_deg - lo_deg; }
};

// Pointing grids and beam parameters of the double-directional beamformer.
// Defaults follow the measurement processing: 6 deg steps, 12 deg Tx beams
// (ULA), 24 deg Rx beams (UCA), a +/-50 deg Tx sector and full Rx circle.
struct BeamformerConfig
{
    double delta_t_deg = 6.0;
    double delta_r_deg = 6.0;
    double b_t_deg = 12.0;
    double b_r_deg = 24.0;
    AngleSector scan_t{-50.0, 50.0};
    AngleSector scan_r{-180.0, 180.0};

    void validate() const;
    std::vector<double> grid_t_deg() const;
    std::vector<double> grid_r_deg() const;
};

// P(tau, phi_T, phi_R): squared magnitude of the delay-domain beamformed
// channel on the pointing grids.
struct DirectionalSpectrum
{
    int n_delay = 0;
    int n_t = 0;
    int n_r = 0;
    std::vector<double> p; // index (k, it, ir) -> k*n_t*n_r + it*n_r + ir
    double delay_step_s = 0.0;
    std::vector<double> angles_t_deg;
    std::vector<double> angles_r_deg;
    int flagged_cells = 0; // pointing cells zeroed for vanishing gain compensation

    double &at(int k, int it, int ir) { return p[(std::size_t(k) * n_t + it) * n_r + ir]; }
    double at(int k, int it, int ir) const { return p[(std::size_t(k) * n_t + it) * n_r + ir]; }
};

struct Pdp
{
    std::vector<double> values;
    double delay_step_s = 0.0;

    double total_energy() const;
};

// Array response at azimuth phi (array frame): element m carries
// g_m(phi) * exp(j 2 pi / lambda <p_m, u(phi)>).
Eigen::VectorXcd steering_vector(const ArrayGeometry &array, double phi_rad, double frequency_hz);

// Parametric frequency-domain synthesis: H(f_i) = sum_l gamma_l
// exp(-j 2 pi f_i tau_l) a_R(phi_Rl) a_T(phi_Tl)^T, steering evaluated at the
// center frequency (narrowband array over the sounded bandwidth).
CtfSnapshot synthesize_ctf(std::span<const Mpc> mpcs, const ArrayGeometry &tx,
                           const ArrayGeometry &rx, const SoundingConfig &cfg);

// Gain-compensated double-directional spectrum. The Tx side beamforms with
// the conjugate steering vector so that a component at (phi_T, phi_R) yields
// a unit-gain peak at the matched pointing; the delay transform is the
// unitary inverse DFT over the tone grid (Parseval-exact).
DirectionalSpectrum beamform(const CtfSnapshot &snapshot, const ArrayGeometry &tx,
                             const ArrayGeometry &rx, const BeamformerConfig &bf,
                             const SoundingConfig &cfg);

// P_h(tau) = (Delta_T Delta_R)/(B_T B_R) * sum over both pointing grids.
Pdp pdp(const DirectionalSpectrum &spectrum, const BeamformerConfig &bf);

// Unitary inverse DFT matrix of the tone grid (cached per num_tones by the
// callers that need it repeatedly): W(k, i) = exp(j 2 pi i k / N) / sqrt(N).
Eigen::MatrixXcd idft_matrix(int num_tones);

} // namespace chanlsp

#endif
