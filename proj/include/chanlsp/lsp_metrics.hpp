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

#ifndef chanlsp_lsp_metrics_H
#define chanlsp_lsp_metrics_H

#include "chanlsp/array_channel.hpp"
#include "chanlsp/types.hpp"

#include <optional>

namespace chanlsp
{

enum class AngleSide
{
    Departure, // ASD (Tx azimuths)
    Arrival    // ASA (Rx azimuths)
};

struct AngleSpreadResult
{
    double spread_deg = 0.0;
    bool saturated = false; // resultant length hit the 1e-12 floor
};

struct KfactorEstimate
{
    double g_a = 0.0;      // mean of |H|^2
    double g_v = 0.0;      // unbiased sample variance of |H|^2
    double k_linear = 0.0; // +inf encoded below
    double k_db = 0.0;
    bool valid = false;    // false when G_a^2 < G_v (deep-fading regime)
    bool infinite = false; // pure specular, G_v -> 0
};

// Per-snapshot large-scale parameter record. DS is stored in seconds; the
// CSV layer reports ns. K is present only for LoS snapshots.
struct LspRecord
{
    long snapshot_id = 0;
    double d3d_m = 0.0;
    PropState state = PropState::NLoS;
    double pl_db = 0.0;
    double ds_s = 0.0;
    double asa_deg = 0.0;
    double asd_deg = 0.0;
    std::optional<double> k_db;
    bool k_infinite = false; // pure-specular estimate (G_v -> 0), no finite dB
    bool asa_saturated = false;
    bool asd_saturated = false;
};

// PL = -10 log10 sum_l |gamma_l|^2
double path_loss(std::span<const Mpc> mpcs);

// power-weighted RMS spread of the component delays
double delay_spread(std::span<const Mpc> mpcs);

// circular-moment azimuth spread, sqrt(-2 ln r) in degrees, r floored at 1e-12
AngleSpreadResult angle_spread(std::span<const Mpc> mpcs, AngleSide side);

// Method-of-moments Rician K from one CTF snapshot's tone samples.
KfactorEstimate k_factor(std::span<const std::complex<double>> ctf);

// Single-spatial-channel CTF with array factors removed:
// H(f_i) = sum_l gamma_l exp(-j 2 pi f_i tau_l). This is the K-factor input.
Eigen::VectorXcd synthesize_omni_ctf(std::span<const Mpc> mpcs, const SoundingConfig &cfg);

// Aggregates the four estimators; K only for LoS.
LspRecord make_lsp_record(long snapshot_id, double d3d_m, PropState state,
                          std::span<const Mpc> mpcs, const SoundingConfig &cfg);

} // namespace chanlsp

#endif
