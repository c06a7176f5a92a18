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

#ifndef chanlsp_freq_model_H
#define chanlsp_freq_model_H

#include "chanlsp/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chanlsp
{

// One (frequency, LSP mean) datum feeding the log-log regression. DS values
// are linear seconds, angular spreads linear degrees.
struct AnchorPoint
{
    double freq_ghz = 0.0;
    Scenario scenario = Scenario::UMa;
    PropState state = PropState::LoS;
    LspKind lsp = LspKind::DS;
    double value = 0.0;
    std::string source;
    bool is_route = false; // measured route mean rather than a literature point
};

// Power-law mean model log10 X(f) = a log10 f + b, f in GHz; b is log10 of
// seconds (DS) or degrees (ASA/ASD) at 1 GHz. The fitted slope is constrained
// to a <= 0.
struct FreqModel
{
    double a = 0.0;
    double b = 0.0;
    Scenario scenario = Scenario::UMa;
    PropState state = PropState::LoS;
    LspKind lsp = LspKind::DS;
    int n_anchors = 0;
    bool constraint_active = false;
};

struct RobustFitConfig
{
    double tukey_k = 4.685;
    double mad_scale = 0.6745;
    int max_irls_iters = 50;
    double tol = 1e-10; // relative coefficient change
    bool rescale_each_iter = false; // sensitivity mode; default freezes s_r
};

// IRLS with Tukey bisquare weights, initialized from unconstrained OLS, robust
// scale frozen from the initial OLS residuals (MAD about the residual median
// over 0.6745). A converged positive slope triggers a clamped refit (a = 0,
// robust location for b) with constraint_active set.
// Requires >= 3 anchors at >= 3 distinct frequencies on one
// (scenario, state, lsp) triple.
FreqModel fit_freq_model(std::span<const AnchorPoint> anchors, const RobustFitConfig &cfg = {});

// linear-unit evaluation (seconds or degrees)
double eval_freq_model(const FreqModel &m, double freq_ghz);

// Reference mean-value formulas: slope * T(f) + intercept with T one of
// log10(f), log10(1+f) or nothing (constant rows).
enum class FreqTransform
{
    Log10F,
    Log10OnePlusF,
    Constant
};

struct Gpp3Model
{
    Scenario scenario = Scenario::UMa;
    PropState state = PropState::LoS;
    LspKind lsp = LspKind::DS;
    double slope = 0.0;
    double intercept = 0.0;
    FreqTransform transform = FreqTransform::Log10F;
};

double eval_3gpp(const Gpp3Model &m, double freq_ghz);

// Continuity report at a band boundary. The log-domain gap is the jump
// between the branch limits evaluated at the boundary itself (exactly zero
// for one continuous model); the linear gap is the finite difference
// |X(B - eps) - X(B + eps)| reported as a diagnostic.
struct GapReport
{
    double boundary_ghz = 7.125;
    double log_gap = 0.0;
    double linear_gap = 0.0;
};

GapReport continuity_check(const FreqModel &m, double boundary_ghz = 7.125, double eps_ghz = 1e-6);

// Two-band baseline glued at a boundary; exists to demonstrate the
// discontinuity a per-band fit produces.
struct PiecewiseFreqModel
{
    FreqModel below;
    FreqModel above;
    double boundary_ghz = 7.125;

    double eval(double freq_ghz) const;
};

GapReport continuity_check(const PiecewiseFreqModel &m, double eps_ghz = 1e-6);

// Route means at the measurement frequency plus matching literature rows.
struct RouteLspMean
{
    std::string area;
    Scenario scenario = Scenario::UMa;
    PropState state = PropState::LoS;
    LspKind lsp = LspKind::DS;
    double value = 0.0; // linear units
};

std::vector<AnchorPoint> build_anchor_set(std::span<const RouteLspMean> route_means,
                                          std::span<const AnchorPoint> literature,
                                          Scenario scenario, PropState state, LspKind lsp,
                                          double route_freq_ghz = 4.85);

// Published reference tables (bundled verbatim as CSV under data/ as well).
std::span<const Gpp3Model> reference_3gpp_models();
std::span<const FreqModel> reference_thiswork_models(); // rows the tool reproduces
std::span<const AnchorPoint> reference_anchor_table();

const Gpp3Model *find_3gpp(Scenario sc, PropState st, LspKind lsp);
const FreqModel *find_thiswork(Scenario sc, PropState st, LspKind lsp);

} // namespace chanlsp

#endif
