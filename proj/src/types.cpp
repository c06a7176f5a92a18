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

#include "chanlsp/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace chanlsp
{

std::string to_string(PropState s) { return s == PropState::LoS ? "los" : "nlos"; }
std::string to_string(Scenario s) { return s == Scenario::UMa ? "uma" : "umi"; }

std::string to_string(LspKind k)
{
    switch (k)
    {
    case LspKind::PL:
        return "pl";
    case LspKind::DS:
        return "ds";
    case LspKind::ASA:
        return "asa";
    case LspKind::ASD:
        return "asd";
    case LspKind::K:
        return "k";
    }
    return "?";
}

namespace
{
std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}
} // namespace

PropState prop_state_from_string(const std::string &s)
{
    std::string t = lower(s);
    if (t == "los")
        return PropState::LoS;
    if (t == "nlos")
        return PropState::NLoS;
    throw std::invalid_argument("unknown propagation state: " + s);
}

Scenario scenario_from_string(const std::string &s)
{
    std::string t = lower(s);
    if (t == "uma")
        return Scenario::UMa;
    if (t == "umi")
        return Scenario::UMi;
    throw std::invalid_argument("unknown scenario: " + s);
}

LspKind lsp_kind_from_string(const std::string &s)
{
    std::string t = lower(s);
    if (t == "pl")
        return LspKind::PL;
    if (t == "ds")
        return LspKind::DS;
    if (t == "asa")
        return LspKind::ASA;
    if (t == "asd")
        return LspKind::ASD;
    if (t == "k")
        return LspKind::K;
    throw std::invalid_argument("unknown LSP selector: " + s);
}

double wrap_pm_pi(double a)
{
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a < 0)
        a += 2.0 * M_PI;
    return a - M_PI;
}

} // namespace chanlsp
