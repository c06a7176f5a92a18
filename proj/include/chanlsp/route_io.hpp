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

#ifndef chanlsp_route_io_H
#define chanlsp_route_io_H

#include "chanlsp/array_channel.hpp"
#include "chanlsp/freq_model.hpp"
#include "chanlsp/mpc_extract.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chanlsp
{

// Array description as written in route/scene files; geometry is derived via
// make_ula/make_uca.
struct ArraySpec
{
    ArrayKind kind = ArrayKind::Ula;
    int n = 8;
    double spacing_m = 0.0; // ULA; 0 selects half-wavelength at the sounding fc
    double radius_m = 0.0;  // UCA; 0 selects half-wavelength arc spacing
    double orientation_deg = 0.0;
    double hpbw_deg = 90.0;
    double gain_dbi = 0.0;

    ArrayGeometry build(const SoundingConfig &cfg) const;
};

// Measured-format route: CTF tensors per snapshot. File units: Hz for the
// sounding grid, degrees for angles, [re, im] pairs for complex entries.
struct RouteFile
{
    std::string area;
    Scenario scenario = Scenario::UMa;
    Eigen::Vector2d bs_position = Eigen::Vector2d::Zero();
    double bs_orientation_deg = 0.0;
    double sampling_interval_s = 0.5;
    SoundingConfig sounding;
    ArraySpec tx_array;
    ArraySpec rx_array;
    std::vector<CtfSnapshot> snapshots;
};

RouteFile load_route(const std::string &path);
std::string route_to_json(const RouteFile &route); // canonical serialization
void save_route(const std::string &path, const RouteFile &route);

// Synthetic-format scene: per-snapshot MPC ground truth (delays in ns,
// angles in degrees on file). CTFs are synthesized on load by the pipeline,
// with complex white noise at snr_db when present.
struct SceneSnapshot
{
    long id = 0;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    double d3d_m = 0.0;
    PropState state = PropState::NLoS;
    std::vector<Mpc> mpcs;
};

struct SceneFile
{
    std::string area;
    Scenario scenario = Scenario::UMa;
    Eigen::Vector2d bs_position = Eigen::Vector2d::Zero();
    double bs_orientation_deg = 0.0;
    double sampling_interval_s = 0.5;
    SoundingConfig sounding;
    ArraySpec tx_array;
    ArraySpec rx_array;
    std::optional<double> snr_db;
    std::vector<SceneSnapshot> snapshots;
};

SceneFile load_scene(const std::string &path);
std::string scene_to_json(const SceneFile &scene);
void save_scene(const std::string &path, const SceneFile &scene);

bool is_scene_file(const std::string &path); // schema sniff

// MPC list serialization (delays ns, angles degrees, gamma [re, im])
std::string mpcs_to_json(std::span<const Mpc> mpcs, long snapshot_id, double residual_ratio);
std::vector<Mpc> mpcs_from_json(const std::string &text);

// Anchor CSV (freq_ghz, scenario, state, lsp, value, source, kind); DS values
// are ns on file, seconds in memory.
std::vector<AnchorPoint> load_anchor_csv(const std::string &path);
std::string anchors_to_csv(std::span<const AnchorPoint> anchors);

std::string models_to_json(std::span<const FreqModel> models, const std::string &provenance_json);

} // namespace chanlsp

#endif
