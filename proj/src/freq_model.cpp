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

#include "chanlsp/freq_model.hpp"

#include "chanlsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace chanlsp
{

namespace
{

struct Ols
{
    double a = 0.0, b = 0.0;
};

Ols ols_fit(const std::vector<double> &u, const std::vector<double> &v)
{
    const double n = double(u.size());
    double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
    {
        su += u[i];
        sv += v[i];
        suu += u[i] * u[i];
        suv += u[i] * v[i];
    }
    double det = n * suu - su * su;
    if (std::abs(det) < 1e-14 * std::max(1.0, n * suu))
        throw std::invalid_argument("fit_freq_model: degenerate anchors (one frequency)");
    Ols o;
    o.a = (n * suv - su * sv) / det;
    o.b = (sv - o.a * su) / n;
    return o;
}

double bisq_weight(double r, double ks)
{
    double z = std::abs(r) / ks;
    if (z > 1.0)
        return 0.0;
    double t = 1.0 - z * z;
    return t * t;
}

// Tukey-weighted location of v (own MAD scale); used by the clamped refit
double robust_location(const std::vector<double> &v, const RobustFitConfig &cfg)
{
    double b = median(v);
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        dev[i] = std::abs(v[i] - b);
    double s = median_inplace(dev) / cfg.mad_scale;
    if (s <= 0.0)
        return b;
    for (int it = 0; it < cfg.max_irls_iters; ++it)
    {
        double wsum = 0.0, acc = 0.0;
        for (double vi : v)
        {
            double w = bisq_weight(vi - b, cfg.tukey_k * s);
            wsum += w;
            acc += w * vi;
        }
        if (wsum <= 0.0)
            break;
        double bn = acc / wsum;
        if (std::abs(bn - b) <= cfg.tol * std::max(1.0, std::abs(b)))
        {
            b = bn;
            break;
        }
        b = bn;
    }
    return b;
}

} // namespace

FreqModel fit_freq_model(std::span<const AnchorPoint> anchors, const RobustFitConfig &cfg)
{
    if (anchors.size() < 3)
        throw std::invalid_argument("fit_freq_model: insufficient anchors (need >= 3)");
    std::set<double> freqs;
    for (const AnchorPoint &a : anchors)
    {
        if (a.freq_ghz <= 0.0 || a.value <= 0.0)
            throw std::invalid_argument("fit_freq_model: anchors need positive freq and value");
        if (a.scenario != anchors[0].scenario || a.state != anchors[0].state ||
            a.lsp != anchors[0].lsp)
            throw std::invalid_argument("fit_freq_model: anchors mix (scenario, state, lsp)");
        freqs.insert(a.freq_ghz);
    }
    if (freqs.size() < 3)
        throw std::invalid_argument("fit_freq_model: insufficient anchors (need >= 3 distinct "
                                    "frequencies)");

    std::vector<double> u(anchors.size()), v(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i)
    {
        u[i] = std::log10(anchors[i].freq_ghz);
        v[i] = std::log10(anchors[i].value);
    }

    Ols o = ols_fit(u, v);
    std::vector<double> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        r[i] = v[i] - (o.a * u[i] + o.b);
    double s_r = mad(r) / cfg.mad_scale;

    double a = o.a, b = o.b;
    if (s_r > 0.0)
    {
        for (int it = 0; it < cfg.max_irls_iters; ++it)
        {
            for (std::size_t i = 0; i < u.size(); ++i)
                r[i] = v[i] - (a * u[i] + b);
            if (cfg.rescale_each_iter)
            {
                double s = mad(r) / cfg.mad_scale;
                if (s <= 0.0)
                    break;
                s_r = s;
            }
            double sw = 0.0, swu = 0.0, swv = 0.0, swuu = 0.0, swuv = 0.0;
            int live = 0;
            for (std::size_t i = 0; i < u.size(); ++i)
            {
                double w = bisq_weight(r[i], cfg.tukey_k * s_r);
                if (w > 0.0)
                    ++live;
                sw += w;
                swu += w * u[i];
                swv += w * v[i];
                swuu += w * u[i] * u[i];
                swuv += w * u[i] * v[i];
            }
            double det = sw * swuu - swu * swu;
            if (live < 2 || std::abs(det) <= 1e-14 * std::max(1.0, sw * swuu))
                break; // all mass on one abscissa; keep the previous iterate
            double an = (sw * swuv - swu * swv) / det;
            double bn = (swv - an * swu) / sw;
            bool done = std::abs(an - a) <= cfg.tol * std::max(1.0, std::abs(a)) &&
                        std::abs(bn - b) <= cfg.tol * std::max(1.0, std::abs(b));
            a = an;
            b = bn;
            if (done)
                break;
        }
    }

    FreqModel m;
    m.scenario = anchors[0].scenario;
    m.state = anchors[0].state;
    m.lsp = anchors[0].lsp;
    m.n_anchors = int(anchors.size());
    if (a > 0.0)
    {
        m.a = 0.0;
        m.b = robust_location(v, cfg);
        m.constraint_active = true;
    }
    else
    {
        m.a = a;
        m.b = b;
    }
    return m;
}

double eval_freq_model(const FreqModel &m, double freq_ghz)
{
    if (freq_ghz <= 0.0)
        throw std::invalid_argument("eval_freq_model: frequency must be positive");
    return std::pow(10.0, m.a * std::log10(freq_ghz) + m.b);
}

double eval_3gpp(const Gpp3Model &m, double freq_ghz)
{
    if (freq_ghz <= 0.0)
        throw std::invalid_argument("eval_3gpp: frequency must be positive");
    double t = 0.0;
    switch (m.transform)
    {
    case FreqTransform::Log10F:
        t = std::log10(freq_ghz);
        break;
    case FreqTransform::Log10OnePlusF:
        t = std::log10(1.0 + freq_ghz);
        break;
    case FreqTransform::Constant:
        t = 0.0;
        break;
    }
    return std::pow(10.0, m.slope * t + m.intercept);
}

GapReport continuity_check(const FreqModel &m, double boundary_ghz, double eps_ghz)
{
    GapReport g;
    g.boundary_ghz = boundary_ghz;
    // one model governs both sides, so the branch limits at the boundary coincide
    double left = m.a * std::log10(boundary_ghz) + m.b;
    double right = m.a * std::log10(boundary_ghz) + m.b;
    g.log_gap = std::abs(left - right);
    g.linear_gap =
        std::abs(eval_freq_model(m, boundary_ghz - eps_ghz) - eval_freq_model(m, boundary_ghz + eps_ghz));
    return g;
}

double PiecewiseFreqModel::eval(double freq_ghz) const
{
    return freq_ghz < boundary_ghz ? eval_freq_model(below, freq_ghz)
                                   : eval_freq_model(above, freq_ghz);
}

GapReport continuity_check(const PiecewiseFreqModel &m, double eps_ghz)
{
    GapReport g;
    g.boundary_ghz = m.boundary_ghz;
    double lo = m.below.a * std::log10(m.boundary_ghz) + m.below.b;
    double hi = m.above.a * std::log10(m.boundary_ghz) + m.above.b;
    g.log_gap = std::abs(lo - hi);
    g.linear_gap = std::abs(m.eval(m.boundary_ghz - eps_ghz) - m.eval(m.boundary_ghz + eps_ghz));
    return g;
}

std::vector<AnchorPoint> build_anchor_set(std::span<const RouteLspMean> route_means,
                                          std::span<const AnchorPoint> literature,
                                          Scenario scenario, PropState state, LspKind lsp,
                                          double route_freq_ghz)
{
    std::vector<AnchorPoint> set;
    for (const RouteLspMean &r : route_means)
    {
        if (r.scenario != scenario || r.state != state || r.lsp != lsp)
            continue;
        if (!(r.value > 0.0))
            continue;
        AnchorPoint a;
        a.freq_ghz = route_freq_ghz;
        a.scenario = scenario;
        a.state = state;
        a.lsp = lsp;
        a.value = r.value;
        a.source = r.area;
        a.is_route = true;
        set.push_back(a);
    }
    for (const AnchorPoint &a : literature)
        if (a.scenario == scenario && a.state == state && a.lsp == lsp && a.value > 0.0)
            set.push_back(a);
    return set;
}

// ----------------------------------------------------------------------
// Published reference tables. DS intercepts are log10 of seconds; angular
// intercepts log10 of degrees. Anchor DS values below are stored in seconds.
// ----------------------------------------------------------------------

namespace
{

const Gpp3Model gpp3_rows[] = {
    {Scenario::UMa, PropState::LoS, LspKind::DS, -0.0963, -6.955, FreqTransform::Log10F},
    {Scenario::UMa, PropState::LoS, LspKind::ASD, -0.1114, 1.06, FreqTransform::Log10F},
    {Scenario::UMa, PropState::LoS, LspKind::ASA, 0.0, 1.81, FreqTransform::Constant},
    {Scenario::UMa, PropState::NLoS, LspKind::DS, -0.204, -6.28, FreqTransform::Log10F},
    {Scenario::UMa, PropState::NLoS, LspKind::ASD, -0.1144, 1.5, FreqTransform::Log10F},
    {Scenario::UMa, PropState::NLoS, LspKind::ASA, -0.27, 2.08, FreqTransform::Log10F},
    {Scenario::UMi, PropState::LoS, LspKind::DS, -0.24, -7.14, FreqTransform::Log10OnePlusF},
    {Scenario::UMi, PropState::LoS, LspKind::ASD, -0.05, 1.21, FreqTransform::Log10OnePlusF},
    {Scenario::UMi, PropState::LoS, LspKind::ASA, -0.08, 1.73, FreqTransform::Log10OnePlusF},
    {Scenario::UMi, PropState::NLoS, LspKind::DS, -0.24, -6.83, FreqTransform::Log10OnePlusF},
    {Scenario::UMi, PropState::NLoS, LspKind::ASD, -0.23, 1.53, FreqTransform::Log10OnePlusF},
    {Scenario::UMi, PropState::NLoS, LspKind::ASA, -0.08, 1.81, FreqTransform::Log10OnePlusF},
};

const FreqModel thiswork_rows[] = {
    {-0.19, -6.71, Scenario::UMa, PropState::LoS, LspKind::DS, 4, false},
    {-0.13, 1.63, Scenario::UMa, PropState::LoS, LspKind::ASD, 4, false},
    {-0.36, 2.11, Scenario::UMa, PropState::LoS, LspKind::ASA, 4, false},
    {-2.21, -5.38, Scenario::UMa, PropState::NLoS, LspKind::DS, 5, false},
    {-0.55, 2.20, Scenario::UMa, PropState::NLoS, LspKind::ASA, 4, false},
    {-0.40, -7.10, Scenario::UMi, PropState::LoS, LspKind::DS, 8, false},
    {-0.31, 1.80, Scenario::UMi, PropState::LoS, LspKind::ASD, 5, false},
    {-0.70, 2.17, Scenario::UMi, PropState::LoS, LspKind::ASA, 8, false},
    {-0.45, -6.76, Scenario::UMi, PropState::NLoS, LspKind::DS, 7, false},
    {-0.63, 2.21, Scenario::UMi, PropState::NLoS, LspKind::ASD, 4, false},
    {-0.36, 2.00, Scenario::UMi, PropState::NLoS, LspKind::ASA, 7, false},
};

AnchorPoint anc(double f, Scenario sc, PropState st, LspKind l, double value, const char *src,
                bool route)
{
    AnchorPoint a;
    a.freq_ghz = f;
    a.scenario = sc;
    a.state = st;
    a.lsp = l;
    a.value = value;
    a.source = src;
    a.is_route = route;
    return a;
}

std::vector<AnchorPoint> build_anchor_rows()
{
    using S = Scenario;
    using P = PropState;
    using L = LspKind;
    const double ns = 1e-9;
    std::vector<AnchorPoint> t;
    auto row = [&](double f, S sc, const char *src, bool route, double ds_los, double ds_nlos,
                   double asa_los, double asa_nlos, double asd_los, double asd_nlos)
    {
        // negative marks a missing cell
        if (ds_los > 0)
            t.push_back(anc(f, sc, P::LoS, L::DS, ds_los * ns, src, route));
        if (ds_nlos > 0)
            t.push_back(anc(f, sc, P::NLoS, L::DS, ds_nlos * ns, src, route));
        if (asa_los > 0)
            t.push_back(anc(f, sc, P::LoS, L::ASA, asa_los, src, route));
        if (asa_nlos > 0)
            t.push_back(anc(f, sc, P::NLoS, L::ASA, asa_nlos, src, route));
        if (asd_los > 0)
            t.push_back(anc(f, sc, P::LoS, L::ASD, asd_los, src, route));
        if (asd_nlos > 0)
            t.push_back(anc(f, sc, P::NLoS, L::ASD, asd_nlos, src, route));
    };
    row(4.85, S::UMa, "Area1", true, 142.40, 241.38, 85.8, 68.3, 36.3, 27.3);
    row(4.85, S::UMa, "Area2", true, 149.14, 176.80, 69.0, 66.7, 34.2, 26.6);
    row(6.0, S::UMa, "lit-uma-6", false, 38.90, 72.44, 30.90, 44.67, 7.1, 10.23);
    row(7.0, S::UMa, "lit-uma-7", false, -1, 24.5, -1, -1, -1, -1);
    row(15.0, S::UMa, "lit-uma-15", false, -1, 18.11, -1, 35.0, -1, -1);
    row(24.15, S::UMa, "lit-uma-24", false, 107.47, -1, 41.25, -1, 28.82, -1);
    row(4.85, S::UMi, "Area3", true, 188.81, 268.85, 68.3, 60.6, 73.4, 66.9);
    row(6.75, S::UMi, "lit-umi-6p75", false, 62.8, 75.6, 21.4, 33.6, 20.7, 48.0);
    row(7.0, S::UMi, "lit-umi-7", false, 37.4, 67.13, 42.0, 43.3, -1, -1);
    row(11.0, S::UMi, "lit-umi-11", false, 6.3, 39.80, 63.1, 63.1, 20.0, 25.1);
    row(15.0, S::UMi, "lit-umi-15", false, 24.55, 93.3, 9.33, 40.74, -1, -1);
    row(16.95, S::UMi, "lit-umi-17", false, 46.5, 65.8, 15.3, 24.0, 24.0, 32.5);
    row(24.15, S::UMi, "lit-umi-24", false, 65.48, -1, 28.93, -1, 33.78, -1);
    row(28.0, S::UMi, "lit-umi-28", false, 20.0, 52.0, 14.0, 30.0, -1, -1);
    return t;
}

const std::vector<AnchorPoint> anchor_rows = build_anchor_rows();

} // namespace

std::span<const Gpp3Model> reference_3gpp_models() { return gpp3_rows; }
std::span<const FreqModel> reference_thiswork_models() { return thiswork_rows; }
std::span<const AnchorPoint> reference_anchor_table() { return anchor_rows; }

const Gpp3Model *find_3gpp(Scenario sc, PropState st, LspKind lsp)
{
    for (const Gpp3Model &m : gpp3_rows)
        if (m.scenario == sc && m.state == st && m.lsp == lsp)
            return &m;
    return nullptr;
}

const FreqModel *find_thiswork(Scenario sc, PropState st, LspKind lsp)
{
    for (const FreqModel &m : thiswork_rows)
        if (m.scenario == sc && m.state == st && m.lsp == lsp)
            return &m;
    return nullptr;
}

} // namespace chanlsp
