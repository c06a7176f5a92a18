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

#include "chanlsp/spatial_consistency.hpp"

#include "chanlsp/rng.hpp"
#include "chanlsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chanlsp
{

void SpatialTrace::validate() const
{
    if (step_m <= 0.0)
        throw std::invalid_argument("SpatialTrace: step must be positive");
    if (values.size() < 4)
        throw std::invalid_argument("SpatialTrace: need at least 4 samples");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("SpatialTrace: non-finite value");
}

SpatialTrace resample_arclength(std::span<const Eigen::Vector2d> positions,
                                std::span<const double> values, double step_m)
{
    if (positions.size() != values.size())
        throw std::invalid_argument("resample_arclength: positions/values size mismatch");
    if (positions.size() < 2)
        throw std::invalid_argument("resample_arclength: need at least two points");
    if (step_m <= 0.0)
        throw std::invalid_argument("resample_arclength: step must be positive");

    const std::size_t n = positions.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        s[i] = s[i - 1] + (positions[i] - positions[i - 1]).norm();
    if (s.back() <= 0.0)
        throw std::invalid_argument("resample_arclength: zero total arc length");

    // collapse zero-length segments so knots are strictly increasing
    std::vector<double> sk, vk;
    sk.reserve(n);
    vk.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!sk.empty() && s[i] <= sk.back())
            continue;
        sk.push_back(s[i]);
        vk.push_back(values[i]);
    }
    const std::size_t m = sk.size();
    if (m < 2)
        throw std::invalid_argument("resample_arclength: degenerate path");

    // Fritsch-Carlson monotone cubic slopes
    std::vector<double> h(m - 1), delta(m - 1), slope(m);
    for (std::size_t i = 0; i + 1 < m; ++i)
    {
        h[i] = sk[i + 1] - sk[i];
        delta[i] = (vk[i + 1] - vk[i]) / h[i];
    }
    if (m == 2)
    {
        slope[0] = slope[1] = delta[0];
    }
    else
    {
        slope[0] = delta[0];
        slope[m - 1] = delta[m - 2];
        for (std::size_t i = 1; i + 1 < m; ++i)
        {
            if (delta[i - 1] * delta[i] <= 0.0)
                slope[i] = 0.0;
            else
            {
                double w1 = 2.0 * h[i] + h[i - 1];
                double w2 = h[i] + 2.0 * h[i - 1];
                slope[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // clamp the one-sided end slopes
        auto clamp_end = [](double sl, double d0) {
            if (sl * d0 <= 0.0)
                return 0.0;
            if (std::abs(sl) > 3.0 * std::abs(d0))
                return 3.0 * d0;
            return sl;
        };
        slope[0] = clamp_end(slope[0], delta[0]);
        slope[m - 1] = clamp_end(slope[m - 1], delta[m - 2]);
    }

    SpatialTrace tr;
    tr.step_m = step_m;
    std::size_t seg = 0;
    for (double x = 0.0; x <= sk.back() + 1e-9 * step_m; x += step_m)
    {
        double xi = std::min(x, sk.back());
        while (seg + 2 < m && xi > sk[seg + 1])
            ++seg;
        double t = (xi - sk[seg]) / h[seg];
        double t2 = t * t, t3 = t2 * t;
        double h00 = 2 * t3 - 3 * t2 + 1;
        double h10 = t3 - 2 * t2 + t;
        double h01 = -2 * t3 + 3 * t2;
        double h11 = t3 - t2;
        tr.values.push_back(h00 * vk[seg] + h10 * h[seg] * slope[seg] + h01 * vk[seg + 1] +
                            h11 * h[seg] * slope[seg + 1]);
    }
    return tr;
}

namespace
{

// mean-center and return sum of squares; the caller reuses the buffer
double center(std::vector<double> &y)
{
    double mu = 0.0;
    for (double v : y)
        mu += v;
    mu /= double(y.size());
    double ss = 0.0;
    for (double &v : y)
    {
        v -= mu;
        ss += v * v;
    }
    return ss;
}

double acf_lag(const std::vector<double> &y, double denom, int lag)
{
    double s = 0.0;
    const std::size_t n = y.size();
    for (std::size_t k = 0; k + std::size_t(lag) < n; ++k)
        s += y[k] * y[k + std::size_t(lag)];
    return s / denom;
}

constexpr double window_threshold = 0.6;

// window = lags 0..first crossing below the threshold (>= 2 lags); computing
// stops at the crossing, so callers pass a lag budget, not a full ACF
std::vector<double> acf_window(const std::vector<double> &centered, double denom, int max_lag)
{
    std::vector<double> r{1.0};
    for (int l = 1; l <= max_lag; ++l)
    {
        r.push_back(acf_lag(centered, denom, l));
        if (r.back() <= window_threshold && l >= 2)
            break;
    }
    return r;
}

DecorrFit fit_decorr_units(std::span<const double> acf, double step_m, double hi_units)
{
    if (acf.size() < 3)
        throw std::invalid_argument("fit_decorr: need at least 3 lags");
    if (std::abs(acf[0] - 1.0) > 1e-9)
        throw std::invalid_argument("fit_decorr: acf[0] must be 1");

    // initial-decay window: up to the first crossing below the threshold
    // (a non-positive value crosses it a fortiori), at least lags 0..2
    int end = int(acf.size()) - 1;
    for (int l = 1; l < int(acf.size()); ++l)
        if (acf[l] <= window_threshold)
        {
            end = std::max(l, 2);
            break;
        }

    bool decays = false;
    for (int l = 1; l <= end; ++l)
        if (acf[l] < acf[l - 1])
            decays = true;
    if (!decays)
        throw std::invalid_argument("fit_decorr: no decay in the autocorrelation");

    auto sse = [&](double d_units)
    {
        double s = 0.0;
        for (int l = 0; l <= end; ++l)
        {
            double e = acf[l] - std::exp(-double(l) / d_units);
            s += e * e;
        }
        return s;
    };

    // coarse log grid, then golden refinement around the best cell
    const double lo = 1e-2, hi = hi_units;
    const int cells = 160;
    int best = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> grid(cells);
    for (int i = 0; i < cells; ++i)
    {
        grid[i] = lo * std::pow(hi / lo, double(i) / double(cells - 1));
        double v = sse(grid[i]);
        if (v < best_sse)
        {
            best_sse = v;
            best = i;
        }
    }
    double a = grid[std::max(best - 1, 0)];
    double b = grid[std::min(best + 1, cells - 1)];
    double d_units = golden_min(sse, a, b, 60);

    DecorrFit fit;
    fit.d_corr_m = d_units * step_m;
    fit.lags_used = end + 1;
    fit.fit_rmse = std::sqrt(sse(d_units) / double(end + 1));
    return fit;
}

} // namespace

std::vector<double> empirical_acf(const SpatialTrace &trace, int max_lag)
{
    trace.validate();
    if (max_lag < 1 || max_lag >= int(trace.values.size()))
        throw std::invalid_argument("empirical_acf: max_lag out of range");
    std::vector<double> y = trace.values;
    double denom = center(y);
    if (denom <= 0.0)
        throw std::invalid_argument("empirical_acf: zero variance trace");
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1);
    r[0] = 1.0;
    for (int l = 1; l <= max_lag; ++l)
        r[std::size_t(l)] = acf_lag(y, denom, l);
    return r;
}

DecorrFit fit_decorr(std::span<const double> acf, double step_m)
{
    if (step_m <= 0.0)
        throw std::invalid_argument("fit_decorr: step must be positive");
    return fit_decorr_units(acf, step_m, 4.0 * double(acf.size()));
}

DecorrEstimate block_bootstrap_ci(const SpatialTrace &trace, int block_len, int b,
                                  std::uint64_t seed)
{
    trace.validate();
    if (b < 2)
        throw std::invalid_argument("block_bootstrap_ci: need at least two replicates");
    const int n = int(trace.values.size());
    const int max_lag = std::max(n / 4, 3);

    std::vector<double> y = trace.values;
    double denom = center(y);
    if (denom <= 0.0)
        throw std::invalid_argument("block_bootstrap_ci: zero variance trace");

    // point estimate and the 1/e crossing for the default block length
    const double hi_units = 4.0 * double(max_lag + 1);
    std::vector<double> acf0 = acf_window(y, denom, max_lag);
    DecorrFit point = fit_decorr_units(acf0, trace.step_m, hi_units);
    int d0_lags = max_lag;
    {
        double r = 1.0;
        for (int l = 1; l <= max_lag; ++l)
        {
            r = acf_lag(y, denom, l);
            if (r <= std::exp(-1.0))
            {
                d0_lags = l;
                break;
            }
        }
    }
    int L = block_len > 0 ? block_len : std::max(1, std::min(std::max(12 * d0_lags, 10), n / 4));
    if (n < 2 * L)
        throw std::invalid_argument("block_bootstrap_ci: trace shorter than two blocks");

    const int m = (n + L - 1) / L;
    Rng rng(seed);
    std::vector<double> dvals;
    dvals.reserve(std::size_t(b));
    int fails = 0;
    std::vector<double> xb(static_cast<std::size_t>(n));
    for (int rep = 0; rep < b; ++rep)
    {
        Rng r = rng.derive(std::uint64_t(rep));
        int pos = 0;
        for (int j = 0; j < m && pos < n; ++j)
        {
            int s0 = int(r.integer(std::uint64_t(n)));
            for (int t = 0; t < L && pos < n; ++t, ++pos)
                xb[std::size_t(pos)] = trace.values[std::size_t((s0 + t) % n)];
        }
        try
        {
            std::vector<double> yb = xb;
            double den = center(yb);
            if (den <= 0.0)
                throw std::invalid_argument("zero variance replicate");
            std::vector<double> acfb = acf_window(yb, den, max_lag);
            dvals.push_back(fit_decorr_units(acfb, trace.step_m, hi_units).d_corr_m);
        }
        catch (const std::invalid_argument &)
        {
            ++fails;
        }
    }
    if (fails * 2 > b)
        throw std::runtime_error("block_bootstrap_ci: unstable correlation structure "
                                 "(more than half the replicates failed)");

    std::sort(dvals.begin(), dvals.end());
    double q_lo = percentile_sorted(dvals, 2.5);
    double q_hi = percentile_sorted(dvals, 97.5);

    DecorrEstimate est;
    est.d_corr_m = point.d_corr_m;
    est.fit_rmse = point.fit_rmse;
    est.lags_used = point.lags_used;
    est.n_fail = fails;
    // basic bootstrap interval, clamped positive and widened to hold the
    // point estimate
    est.ci_low_m = std::max(2.0 * point.d_corr_m - q_hi, 1e-9);
    est.ci_high_m = 2.0 * point.d_corr_m - q_lo;
    est.ci_low_m = std::min(est.ci_low_m, point.d_corr_m);
    est.ci_high_m = std::max(est.ci_high_m, point.d_corr_m);
    return est;
}

} // namespace chanlsp
