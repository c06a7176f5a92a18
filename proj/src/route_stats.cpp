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

#include "chanlsp/route_stats.hpp"

#include "chanlsp/rng.hpp"
#include "chanlsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chanlsp
{

void BinningConfig::validate() const
{
    if (n_min < 2)
        throw std::invalid_argument("BinningConfig: n_min must be >= 2");
    if (max_width_m <= 0.0)
        throw std::invalid_argument("BinningConfig: max_width must be positive");
}

RouteDataset filter_valid(const RouteDataset &route, const AngleSector &sector_deg)
{
    RouteDataset out = route;
    out.snapshots.clear();
    const bool full = sector_deg.width_deg() >= 360.0 - 1e-9;
    for (const RoutePoint &p : route.snapshots)
    {
        if (!full)
        {
            Eigen::Vector2d d = p.position - route.bs_position;
            if (d.norm() <= 0.0)
                continue;
            double bearing = wrap_pm_pi(std::atan2(d.y(), d.x()) - route.bs_orientation_rad);
            if (!sector_deg.contains_deg(rad2deg(bearing)))
                continue;
        }
        out.snapshots.push_back(p);
    }
    return out;
}

RouteDataset deduplicate(const RouteDataset &route, double threshold_m)
{
    RouteDataset out = route;
    out.snapshots.clear();
    for (const RoutePoint &p : route.snapshots)
    {
        if (out.snapshots.empty() ||
            (p.position - out.snapshots.back().position).norm() >= threshold_m)
            out.snapshots.push_back(p);
    }
    return out;
}

BinLayout adaptive_bins(std::span<const double> d, const BinningConfig &cfg)
{
    cfg.validate();
    if (d.empty())
        throw std::invalid_argument("adaptive_bins: no samples");
    for (std::size_t i = 1; i < d.size(); ++i)
        if (d[i] < d[i - 1])
            throw std::invalid_argument("adaptive_bins: distances must be sorted");

    BinLayout out;
    const int n = int(d.size());
    int start = 0;
    int count = 0;
    auto close_bin = [&](int end_excl)
    {
        out.start.push_back(start);
        out.count.push_back(end_excl - start);
        out.sparse.push_back(end_excl - start < cfg.n_min);
        start = end_excl;
        count = 0;
    };
    for (int i = 0; i < n; ++i)
    {
        if (count >= cfg.n_min)
            close_bin(i);
        else if (count > 0 && d[i] - d[start] > cfg.max_width_m)
            close_bin(i); // width cap wins over reaching n_min
        ++count;
    }
    close_bin(n);

    // final partial bin: merge backward when the cap allows it
    int k = int(out.count.size());
    if (k >= 2 && out.count[k - 1] < cfg.n_min)
    {
        int prev_start = out.start[k - 2];
        if (d[n - 1] - d[prev_start] <= cfg.max_width_m)
        {
            out.count[k - 2] += out.count[k - 1];
            out.sparse[k - 2] = out.count[k - 2] < cfg.n_min;
            out.start.pop_back();
            out.count.pop_back();
            out.sparse.pop_back();
            out.merged_tail = true;
            k -= 1;
        }
    }

    out.boundaries.resize(k + 1);
    out.boundaries[0] = d[0];
    out.boundaries[k] = d[n - 1];
    for (int b = 1; b < k; ++b)
    {
        int last_of_prev = out.start[b] - 1;
        out.boundaries[b] = 0.5 * (d[last_of_prev] + d[out.start[b]]);
    }
    return out;
}

MedianCi bootstrap_median_ci(std::span<const double> values, int b, std::uint64_t seed)
{
    if (values.empty())
        throw std::invalid_argument("bootstrap_median_ci: empty sample");
    if (b < 1)
        throw std::invalid_argument("bootstrap_median_ci: need at least one replicate");
    MedianCi out;
    out.median = median(values);
    Rng rng(seed);
    const std::size_t n = values.size();
    std::vector<double> meds(static_cast<std::size_t>(b));
    std::vector<double> resample(n);
    for (int i = 0; i < b; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            resample[j] = values[rng.integer(n)];
        meds[std::size_t(i)] = median_inplace(resample);
    }
    std::sort(meds.begin(), meds.end());
    out.ci_low = percentile_sorted(meds, 5.0);
    out.ci_high = percentile_sorted(meds, 95.0);
    return out;
}

double lsp_value(const LspRecord &r, LspKind lsp)
{
    switch (lsp)
    {
    case LspKind::PL:
        return r.pl_db;
    case LspKind::DS:
        return r.ds_s;
    case LspKind::ASA:
        return r.asa_deg;
    case LspKind::ASD:
        return r.asd_deg;
    case LspKind::K:
        if (!r.k_db)
            throw std::invalid_argument("lsp_value: record has no K estimate");
        return *r.k_db;
    }
    throw std::invalid_argument("lsp_value: bad selector");
}

std::vector<BinSummary> distance_trend(const RouteDataset &route, LspKind lsp, PropState state,
                                       const BinningConfig &cfg, std::uint64_t seed,
                                       int bootstrap_b)
{
    struct Row
    {
        double d;
        double v;
    };
    std::vector<Row> rows;
    for (const RoutePoint &p : route.snapshots)
    {
        if (p.lsp.state != state)
            continue;
        if (lsp == LspKind::K && !p.lsp.k_db)
            continue;
        rows.push_back({p.lsp.d3d_m, lsp_value(p.lsp, lsp)});
    }
    std::vector<BinSummary> out;
    if (rows.empty())
        return out;
    std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) { return a.d < b.d; });
    std::vector<double> dist(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        dist[i] = rows[i].d;
    BinLayout bins = adaptive_bins(dist, cfg);

    Rng base(seed);
    for (std::size_t b = 0; b < bins.count.size(); ++b)
    {
        std::vector<double> vals(static_cast<std::size_t>(bins.count[b]));
        for (int i = 0; i < bins.count[b]; ++i)
            vals[std::size_t(i)] = rows[std::size_t(bins.start[b] + i)].v;
        MedianCi ci = bootstrap_median_ci(vals, bootstrap_b, base.derive(b).seed());
        BinSummary s;
        s.center_m = 0.5 * (bins.boundaries[b] + bins.boundaries[b + 1]);
        s.median = ci.median;
        s.ci_low = ci.ci_low;
        s.ci_high = ci.ci_high;
        s.count = bins.count[b];
        s.sparse = bins.sparse[b];
        out.push_back(s);
    }
    return out;
}

} // namespace chanlsp
