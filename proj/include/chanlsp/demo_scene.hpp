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

#ifndef chanlsp_demo_scene_H
#define chanlsp_demo_scene_H

#include "chanlsp/route_io.hpp"

#include <cstdint>
#include <vector>

namespace chanlsp
{

// Deterministic synthetic demo data: one UMa drive (ULA base station, vehicle
// stops, a sector exit) and one UMi drive (UCA base station, full-circle
// coverage). Distance laws, shadow-fading correlation and delay/angle
// statistics are plausible urban values so every pipeline stage has
// something real to estimate. Same seed, same scenes.
std::vector<SceneFile> generate_demo_scenes(std::uint64_t seed);

} // namespace chanlsp

#endif
