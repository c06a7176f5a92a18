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

#include "chanlsp/pathloss_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace chanlsp
{

double fspl_1m_db(double fc_hz)
{
    if (fc_hz <= 0.0)
        throw std::invalid_argument("fspl_1m: frequency must be positive");
    return 32.4 + 20.0 * std::log10(fc_hz / 1e9);
}

double PathlossFit::evaluate(double d3d_m) const
{
    if (d3d_m <= 0.0)
        throw std::invalid_argument("PathlossFit: distance must be positive");
    if (model == PlModel::CI)
        return fspl_1m_db(fc_hz) + 10.0 * n_or_alpha * std::log10(d3d_m / d0_m);
    return 10.0 * n_or_alpha * std::log10(d3d_m) + beta_db;
}

namespace
{
void check_samples(std::span<const PlSample> samples)
{
    if (samples.size() < 2)
        throw std::invalid_argument("path-loss fit: need at least two samples");
    PropState s0 = samples[0].state;
    bool distinct = false;
    for (const PlSample &s : samples)
    {
        if (s.d3d_m <= 0.0)
            throw std::invalid_argument("path-loss fit: distances must be positive");
        if (s.state != s0)
            throw std::invalid_argument("path-loss fit: mixed LoS/NLoS samples; fit per state");
        if (s.d3d_m != samples[0].d3d_m)
            distinct = true;
    }
    if (!distinct)
        throw std::invalid_argument("path-loss fit: degenerate fit, all distances equal");
}
} // namespace

PathlossFit fit_ci(std::span<const PlSample> samples, double fc_hz)
{
    check_samples(samples);
    const double fspl = fspl_1m_db(fc_hz);
    double sxx = 0.0, sxy = 0.0;
    for (const PlSample &s : samples)
    {
        double x = 10.0 * std::log10(s.d3d_m);
        double y = s.pl_db - fspl;
        sxx += x * x;
        sxy += x * y;
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("fit_ci: degenerate fit, all samples at the 1 m anchor");
    PathlossFit fit;
    fit.model = PlModel::CI;
    fit.fc_hz = fc_hz;
    fit.state = samples[0].state;
    fit.n_or_alpha = sxy / sxx;
    double ss = 0.0;
    for (const PlSample &s : samples)
    {
        double r = s.pl_db - (fspl + 10.0 * fit.n_or_alpha * std::log10(s.d3d_m));
        ss += r * r;
    }
    fit.sigma_db = std::sqrt(ss / double(samples.size()));
    return fit;
}

PathlossFit fit_fi(std::span<const PlSample> samples)
{
    check_samples(samples);
    const double n = double(samples.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const PlSample &s : samples)
    {
        double x = 10.0 * std::log10(s.d3d_m);
        sx += x;
        sy += s.pl_db;
        sxx += x * x;
        sxy += x * s.pl_db;
    }
    double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * n * sxx)
        throw std::invalid_argument("fit_fi: degenerate fit");
    PathlossFit fit;
    fit.model = PlModel::FI;
    fit.state = samples[0].state;
    fit.n_or_alpha = (n * sxy - sx * sy) / det;
    fit.beta_db = (sy - fit.n_or_alpha * sx) / n;
    double ss = 0.0;
    for (const PlSample &s : samples)
    {
        double r = s.pl_db - (10.0 * fit.n_or_alpha * std::log10(s.d3d_m) + fit.beta_db);
        ss += r * r;
    }
    fit.sigma_db = std::sqrt(ss / double(samples.size()));
    return fit;
}

double eval_abg(const AbgParams &p, double fc_hz, double d3d_m)
{
    if (fc_hz <= 0.0 || d3d_m <= 0.0)
        throw std::invalid_argument("eval_abg: frequency and distance must be positive");
    return 10.0 * p.alpha * std::log10(d3d_m) + p.beta_db +
           10.0 * p.gamma * std::log10(fc_hz / 1e9);
}

AbgParams fit_abg(std::span<const AbgSample> samples)
{
    if (samples.size() < 3)
        throw std::invalid_argument("fit_abg: need at least three samples");
    Eigen::MatrixXd a(samples.size(), 3);
    Eigen::VectorXd y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        if (samples[i].fc_hz <= 0.0 || samples[i].d3d_m <= 0.0)
            throw std::invalid_argument("fit_abg: frequency and distance must be positive");
        a(long(i), 0) = 10.0 * std::log10(samples[i].d3d_m);
        a(long(i), 1) = 1.0;
        a(long(i), 2) = 10.0 * std::log10(samples[i].fc_hz / 1e9);
        y(long(i)) = samples[i].pl_db;
    }
    Eigen::Matrix3d ata = a.transpose() * a;
    if (std::abs(ata.determinant()) < 1e-9)
        throw std::invalid_argument("fit_abg: degenerate design (need distance and "
                                    "frequency diversity)");
    Eigen::Vector3d coef = ata.ldlt().solve(a.transpose() * y);
    AbgParams p;
    p.alpha = coef(0);
    p.beta_db = coef(1);
    p.gamma = coef(2);
    Eigen::VectorXd r = y - a * coef;
    p.sigma_db = std::sqrt(r.squaredNorm() / double(samples.size()));
    return p;
}

} // namespace chanlsp
