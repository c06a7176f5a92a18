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

#include "chanlsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chanlsp
{

double median_inplace(std::vector<double> &x)
{
    if (x.empty())
        throw std::invalid_argument("median: empty sample");
    std::size_t n = x.size();
    auto mid = x.begin() + n / 2;
    std::nth_element(x.begin(), mid, x.end());
    double hi = *mid;
    if (n % 2 == 1)
        return hi;
    double lo = *std::max_element(x.begin(), mid);
    return 0.5 * (lo + hi);
}

double median(std::span<const double> x)
{
    std::vector<double> tmp(x.begin(), x.end());
    return median_inplace(tmp);
}

double percentile_sorted(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw std::invalid_argument("percentile: empty sample");
    if (sorted.size() == 1)
        return sorted[0];
    double rank = p / 100.0 * double(sorted.size() - 1);
    rank = std::clamp(rank, 0.0, double(sorted.size() - 1));
    std::size_t i = std::size_t(std::floor(rank));
    if (i >= sorted.size() - 1)
        return sorted.back();
    double frac = rank - double(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double mad(std::span<const double> x)
{
    double med = median(x);
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        dev[i] = std::abs(x[i] - med);
    return median_inplace(dev);
}

double mean(std::span<const double> x)
{
    if (x.empty())
        throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double v : x)
        s += v;
    return s / double(x.size());
}

} // namespace chanlsp
