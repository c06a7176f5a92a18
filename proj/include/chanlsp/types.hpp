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

#ifndef chanlsp_types_H
#define chanlsp_types_H

#include <cmath>
#include <string>

namespace chanlsp
{

enum class PropState
{
    LoS,
    NLoS
};

enum class Scenario
{
    UMa,
    UMi
};

// Large-scale parameter selector shared by the trend, spatial-consistency and
// frequency-model stages. PL enters the spatial stage as shadow-fading
// residuals; the frequency models cover DS/ASA/ASD only.
enum class LspKind
{
    PL,
    DS,
    ASA,
    ASD,
    K
};

std::string to_string(PropState s);
std::string to_string(Scenario s);
std::string to_string(LspKind k);
PropState prop_state_from_string(const std::string &s);
Scenario scenario_from_string(const std::string &s);
LspKind lsp_kind_from_string(const std::string &s);

inline constexpr double speed_of_light = 299792458.0; // m/s

inline constexpr double deg2rad(double d) { return d * M_PI / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / M_PI; }

// Wrap an angle to [-pi, pi)
double wrap_pm_pi(double a);

} // namespace chanlsp

#endif
