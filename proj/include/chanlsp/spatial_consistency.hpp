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

#ifndef chanlsp_spatial_consistency_H
#define chanlsp_spatial_consistency_H

#include "chanlsp/types.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace chanlsp
{

// LSP trace resampled on a uniform arc-length grid
struct SpatialTrace
{
    std::vector<double> values;
    double step_m = 1.0;
    LspKind lsp = LspKind::PL;
    PropState state = PropState::LoS;

    void validate() const; // length >= 4, positive step, finite values
};

struct DecorrFit
{
    double d_corr_m = 0.0;
    double fit_rmse = 0.0;
    int lags_used = 0; // window length including lag 0
};

struct DecorrEstimate
{
    double d_corr_m = 0.0;
    double ci_low_m = 0.0;
    double ci_high_m = 0.0;
    double fit_rmse = 0.0;
    int lags_used = 0;
    int n_fail = 0; // bootstrap replicates whose refit failed
};

// Monotone piecewise-cubic (Fritsch-Carlson) interpolation of per-point
// values onto a uniform arc-length grid along the polyline.
SpatialTrace resample_arclength(std::span<const Eigen::Vector2d> positions,
                                std::span<const double> values, double step_m);

// Normalized autocovariance with the full-trace denominator:
// R_l = sum_k Y_k Y_{k+l} / sum_k Y_k^2, Y mean-centered; R_0 = 1 exactly.
std::vector<double> empirical_acf(const SpatialTrace &trace, int max_lag);

// Exponential-decay least squares over the initial-decay window (lags up to
// the first crossing below 0.6, bounded by max_lag); bounded 1-D search in
// units of the step, so doubling the step exactly doubles the estimate.
DecorrFit fit_decorr(std::span<const double> acf, double step_m);

// Circular block bootstrap: ceil(len/L) uniform wrap-around blocks per
// replicate, decorrelation refit per replicate, basic (reversed-percentile)
// 95% interval from the 2.5/97.5 replicate percentiles. block_len <= 0
// selects L = clamp(12 * ceil(D0/step), 10, len/4) with D0 the first 1/e
// crossing of the trace ACF.
DecorrEstimate block_bootstrap_ci(const SpatialTrace &trace, int block_len, int b,
                                  std::uint64_t seed);

} // namespace chanlsp

#endif
