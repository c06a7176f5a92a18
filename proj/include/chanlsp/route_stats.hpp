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

#ifndef chanlsp_route_stats_H
#define chanlsp_route_stats_H

#include "chanlsp/lsp_metrics.hpp"
#include "chanlsp/types.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chanlsp
{

struct RoutePoint
{
    LspRecord lsp;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
};

struct RouteDataset
{
    std::string area;
    Scenario scenario = Scenario::UMa;
    std::vector<RoutePoint> snapshots; // acquisition order
    double sampling_interval_s = 0.5;
    Eigen::Vector2d bs_position = Eigen::Vector2d::Zero();
    double bs_orientation_rad = 0.0; // boresight bearing of the BS array
};

struct BinningConfig
{
    int n_min = 20;
    double max_width_m = 50.0;

    void validate() const;
};

struct BinSummary
{
    double center_m = 0.0;
    double median = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int count = 0;
    bool sparse = false; // closed by the width cap below n_min
};

// Drops snapshots whose BS->MS bearing falls outside the coverage sector
// (degrees, relative to the BS boresight). A full-circle sector keeps all.
RouteDataset filter_valid(const RouteDataset &route, const AngleSector &sector_deg);

// Greedy forward pass: keep a snapshot iff it is at least `threshold_m` from
// the last kept one; the first snapshot is always kept.
RouteDataset deduplicate(const RouteDataset &route, double threshold_m = 1.0);

struct BinLayout
{
    std::vector<double> boundaries;  // K+1 ascending values spanning [d_1, d_N]
    std::vector<int> start;          // first sample index per bin
    std::vector<int> count;
    std::vector<bool> sparse;        // width-capped below n_min
    bool merged_tail = false;        // final partial bin absorbed backward
};

// Sequential bins over sorted distances: close at n_min samples, or earlier
// when the next sample would stretch the bin past max_width (the cap wins).
// An undersized final bin merges backward when the merged span still honors
// the cap, and stays flagged sparse otherwise.
BinLayout adaptive_bins(std::span<const double> sorted_distances, const BinningConfig &cfg);

struct MedianCi
{
    double median = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Percentile bootstrap of the sample median: B resamples with replacement,
// 5th/95th percentiles with linear interpolation; bit-reproducible per seed.
MedianCi bootstrap_median_ci(std::span<const double> values, int b, std::uint64_t seed);

// One BinSummary per adaptive bin of the selected LSP/state, bootstrap CIs
// seeded per bin (seed + bin index).
std::vector<BinSummary> distance_trend(const RouteDataset &route, LspKind lsp, PropState state,
                                       const BinningConfig &cfg, std::uint64_t seed,
                                       int bootstrap_b = 1000);

// Snapshot value of one LSP; K and PL taken from the record as stored.
double lsp_value(const LspRecord &r, LspKind lsp);

} // namespace chanlsp

#endif
