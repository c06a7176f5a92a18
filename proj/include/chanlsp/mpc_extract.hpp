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

#ifndef chanlsp_mpc_extract_H
#define chanlsp_mpc_extract_H

#include "chanlsp/array_channel.hpp"

#include <optional>
#include <utility>

namespace chanlsp
{

// Space-alternating super-resolution extraction configuration. The coarse
// stage scans a (delay bin x Tx angle x Rx angle) grid of the residual's
// beamformed power; each seeded component is then polished by 1-D searches
// (tau, phi_T, phi_R in turn, gamma re-solved by least squares).
struct ExtractionConfig
{
    int max_paths = 60;                    // L_max
    double residual_target = 0.05;         // stop when ||R||^2/||H||^2 drops below
    double dynamic_range_db = 30.0;        // reject components this far below the strongest
    double coarse_angle_step_deg = 2.0;    // coarse grid; delay step is one bin
    int refine_iters = 36;                 // golden-section iterations per coordinate
    int em_rounds = 3;                     // full re-refinement cycles after seeding
    double convergence_tol = 1e-4;         // relative residual log-power change per round
    std::optional<AngleSector> scan_t;     // default: ULA +-50 deg, UCA full circle
    std::optional<AngleSector> scan_r;

    void validate() const;
};

AngleSector default_scan_sector(ArrayKind kind);

struct ExtractionResult
{
    std::vector<Mpc> mpcs; // sorted by descending |gamma|^2
    double residual_power_ratio = 0.0;
    int iterations_used = 0; // EM re-refinement rounds executed
    bool converged = false;
};

ExtractionResult extract_mpcs(const CtfSnapshot &snapshot, const ArrayGeometry &tx,
                              const ArrayGeometry &rx, const SoundingConfig &cfg_s,
                              const ExtractionConfig &cfg_e);

// Reconstruction is synthesize_ctf of the component list; the residual is
// ||H - H_rec||^2 / ||H||^2 over all tones and element pairs.
std::pair<CtfSnapshot, double> reconstruct_and_residual(const CtfSnapshot &snapshot,
                                                        std::span<const Mpc> mpcs,
                                                        const ArrayGeometry &tx,
                                                        const ArrayGeometry &rx,
                                                        const SoundingConfig &cfg);

struct ClusterResult
{
    struct Centroid
    {
        double tau_s = 0.0;
        double phi_t_rad = 0.0;
        double phi_r_rad = 0.0;
        double power = 0.0; // sum of member |gamma|^2
    };
    std::vector<int> labels; // per input MPC
    std::vector<Centroid> centroids;
    int k = 0;
};

// K-power-means over the feature (tau/delay_scale, phi_T, phi_R) with
// circular angle distance; centroid updates weight members by |gamma|^2.
// k = nullopt selects k by the largest drop in relative improvement of the
// power-weighted within-cluster distance. Initialization is deterministic
// (strongest component, then power-weighted farthest points), so the result
// is invariant to input order.
ClusterResult cluster_kpm(std::span<const Mpc> mpcs, std::optional<int> k,
                          double delay_scale_s = 50e-9, std::uint64_t seed = 0);

} // namespace chanlsp

#endif
