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

#ifndef chanlsp_pipeline_H
#define chanlsp_pipeline_H

#include "chanlsp/mpc_extract.hpp"
#include "chanlsp/route_io.hpp"
#include "chanlsp/route_stats.hpp"
#include "chanlsp/freq_model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace chanlsp
{

struct PipelineConfig
{
    std::vector<std::string> inputs; // route or scene files
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    double dedup_threshold_m = 1.0;
    ExtractionConfig extraction;
    BinningConfig binning;
    int trend_bootstrap_b = 1000;
    double spatial_step_m = 1.0;
    int spatial_bootstrap_b = 400;
    int spatial_block_len = 0; // 0 = automatic
    RobustFitConfig robust_fit;
    std::string anchors_csv; // empty = built-in literature anchors
    double route_anchor_freq_ghz = 4.85;
    unsigned threads = 0; // 0 = hardware
    std::string canonical_text; // filled by the loader, hashed into provenance
};

// Reads the pipeline config (TOML subset). Paths inside the file resolve
// relative to the config file's directory; CHANLSP_OUT overrides output_dir.
PipelineConfig load_pipeline_config(const std::string &path);

struct RunReport
{
    struct Artifact
    {
        std::string name;
        std::string sha256;
        std::size_t bytes = 0;
    };
    std::vector<Artifact> artifacts;
    std::string config_sha256;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::vector<std::string> notes;
};

// Full processing chain: extraction -> per-snapshot LSPs -> path-loss fits ->
// binned distance trends -> spatial consistency -> frequency-continuous
// models, with every artifact digest-tracked. Deterministic for a fixed
// (inputs, config, seed).
RunReport run_pipeline(const PipelineConfig &cfg);

std::string report_to_json(const RunReport &report);

// Synthesize the CTF snapshots of a scene (seeded noise per snapshot).
std::vector<CtfSnapshot> synthesize_scene(const SceneFile &scene, std::uint64_t seed);

} // namespace chanlsp

#endif
