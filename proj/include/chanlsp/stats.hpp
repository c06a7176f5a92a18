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

#ifndef chanlsp_stats_H
#define chanlsp_stats_H

#include <span>
#include <vector>

namespace chanlsp
{

// Median of an unsorted sample (copies); even sizes average the two central
// order statistics.
double median(std::span<const double> x);

// In-place variant, reorders `x`
double median_inplace(std::vector<double> &x);

// Percentile with linear interpolation between order statistics
// (rank = p/100 * (n-1)); `sorted` must be ascending.
double percentile_sorted(std::span<const double> sorted, double p);

// Median absolute deviation about the sample median (unscaled)
double mad(std::span<const double> x);

double mean(std::span<const double> x);

// Golden-section maximization of f over [lo, hi]; returns the abscissa.
// f must be unimodal on the bracket for an exact result.
template <typename F> double golden_max(F &&f, double lo, double hi, int iters)
{
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i)
    {
        if (fc > fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

template <typename F> double golden_min(F &&f, double lo, double hi, int iters)
{
    return golden_max([&](double x) { return -f(x); }, lo, hi, iters);
}

} // namespace chanlsp

#endif
