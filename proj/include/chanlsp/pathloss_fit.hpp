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

#ifndef chanlsp_pathloss_fit_H
#define chanlsp_pathloss_fit_H

#include "chanlsp/types.hpp"

#include <span>
#include <vector>

namespace chanlsp
{

struct PlSample
{
    double d3d_m = 0.0;
    double pl_db = 0.0;
    PropState state = PropState::NLoS;
};

enum class PlModel
{
    CI,
    FI
};

struct PathlossFit
{
    PlModel model = PlModel::CI;
    double n_or_alpha = 0.0; // CI exponent n, or FI slope alpha
    double beta_db = 0.0;    // FI intercept (unused for CI)
    double sigma_db = 0.0;   // shadow-fading std (population / ML form)
    double fc_hz = 0.0;      // CI anchor frequency (unused for FI)
    double d0_m = 1.0;       // CI reference distance, fixed at 1 m
    PropState state = PropState::NLoS;

    double evaluate(double d3d_m) const;
};

struct AbgParams
{
    double alpha = 0.0; // distance slope
    double beta_db = 0.0;
    double gamma = 0.0; // frequency slope
    double sigma_db = 0.0;
};

// Free-space path loss at the 1 m close-in anchor: 32.4 + 20 log10(fc/1 GHz)
double fspl_1m_db(double fc_hz);

// Least squares for the close-in exponent n; all samples must share one
// propagation state and span at least two distinct distances.
PathlossFit fit_ci(std::span<const PlSample> samples, double fc_hz);

// Ordinary least squares for the floating-intercept (alpha, beta)
PathlossFit fit_fi(std::span<const PlSample> samples);

// Reference evaluation of the alpha-beta-gamma model (never fitted to
// single-frequency data; a multi-frequency fitter is exposed separately)
double eval_abg(const AbgParams &p, double fc_hz, double d3d_m);

// Multi-frequency ABG least squares; exposed for completeness, not part of
// the single-band processing chain.
struct AbgSample
{
    double fc_hz = 0.0;
    double d3d_m = 0.0;
    double pl_db = 0.0;
};
AbgParams fit_abg(std::span<const AbgSample> samples);

} // namespace chanlsp

#endif
