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

#include "chanlsp/mpc_extract.hpp"

#include "chanlsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chanlsp
{

void ExtractionConfig::validate() const
{
    if (max_paths < 1)
        throw std::invalid_argument("ExtractionConfig: max_paths must be >= 1");
    if (!(residual_target > 0.0 && residual_target < 1.0))
        throw std::invalid_argument("ExtractionConfig: residual_target must lie in (0, 1)");
    if (dynamic_range_db <= 0.0)
        throw std::invalid_argument("ExtractionConfig: dynamic_range must be positive");
    if (coarse_angle_step_deg <= 0.0)
        throw std::invalid_argument("ExtractionConfig: coarse angle step must be positive");
    if (refine_iters < 1 || em_rounds < 0)
        throw std::invalid_argument("ExtractionConfig: bad iteration counts");
}

AngleSector default_scan_sector(ArrayKind kind)
{
    return kind == ArrayKind::Ula ? AngleSector{-50.0, 50.0} : AngleSector{-180.0, 180.0};
}

namespace
{

struct Grid
{
    std::vector<double> angles_rad;
    Eigen::MatrixXcd steer; // (elements) x (grid points)
    Eigen::VectorXd norm2;  // gain-compensation C = ||a||^2 per point
};

Grid build_grid(const ArrayGeometry &array, const AngleSector &sector, double step_deg, double fc)
{
    Grid g;
    double full = sector.width_deg() >= 360.0 - 1e-9 ? sector.lo_deg + 360.0 - step_deg / 2.0
                                                     : sector.hi_deg + 1e-9;
    for (double a = sector.lo_deg; a <= full; a += step_deg)
        g.angles_rad.push_back(deg2rad(a));
    g.steer.resize(array.size(), int(g.angles_rad.size()));
    g.norm2.resize(int(g.angles_rad.size()));
    for (int i = 0; i < int(g.angles_rad.size()); ++i)
    {
        g.steer.col(i) = steering_vector(array, g.angles_rad[i], fc);
        g.norm2(i) = g.steer.col(i).squaredNorm();
    }
    return g;
}

// Matched-filter machinery for one snapshot. Tone-domain residual is exact;
// the delay-domain image (for coarse seeding) is updated incrementally.
class SageEngine
{
  public:
    SageEngine(const CtfSnapshot &snapshot, const ArrayGeometry &tx, const ArrayGeometry &rx,
               const SoundingConfig &cs, const ExtractionConfig &ce)
        : tx_(tx), rx_(rx), cs_(cs), ce_(ce), nr_(snapshot.n_rx), nt_(snapshot.n_tx),
          n_(snapshot.n_tones), w_(idft_matrix(snapshot.n_tones)), r_(snapshot.h)
    {
        fc_ = cs.center_frequency_hz;
        f0_ = cs.tone_frequency(0);
        df_ = cs.tone_spacing_hz;
        sector_t_ = ce.scan_t.value_or(default_scan_sector(tx.kind));
        sector_r_ = ce.scan_r.value_or(default_scan_sector(rx.kind));
        grid_t_ = build_grid(tx, sector_t_, ce.coarse_angle_step_deg, fc_);
        grid_r_ = build_grid(rx, sector_r_, ce.coarse_angle_step_deg, fc_);
        rd_ = w_ * r_;
        bin_power_ = rd_.rowwise().squaredNorm();
    }

    struct Seed
    {
        double metric = 0.0;
        int bin = 0;
        double phi_t = 0.0;
        double phi_r = 0.0;
    };

    // argmax over the coarse grid of |a_R^H Rd_k conj(a_T)|^2 / (C_R C_T).
    // ||Rd_k||_F^2 bounds the metric of bin k, so bins are visited in
    // descending power and the scan stops once the bound drops below the
    // best metric found.
    Seed coarse_seed() const
    {
        std::vector<int> order(n_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return bin_power_(a) > bin_power_(b); });

        Seed best;
        Eigen::MatrixXcd hk(nr_, nt_), g1, g2;
        const int ngt = int(grid_t_.angles_rad.size());
        const int ngr = int(grid_r_.angles_rad.size());
        for (int k : order)
        {
            if (bin_power_(k) <= best.metric)
                break;
            for (int j = 0; j < nt_; ++j)
                hk.col(j) = rd_.row(k).segment(j * nr_, nr_).transpose();
            g1.noalias() = grid_r_.steer.adjoint() * hk;
            g2.noalias() = g1 * grid_t_.steer.conjugate();
            for (int it = 0; it < ngt; ++it)
                for (int ir = 0; ir < ngr; ++ir)
                {
                    double m = std::norm(g2(ir, it)) / (grid_t_.norm2(it) * grid_r_.norm2(ir));
                    if (m > best.metric)
                        best = {m, k, grid_t_.angles_rad[it], grid_r_.angles_rad[ir]};
                }
        }
        return best;
    }

    // tone-domain signature correlation sum_i y_i exp(+j2pi f_i tau) via a
    // phase recurrence over the grid
    std::complex<double> correlate(const Eigen::VectorXcd &y, double tau) const
    {
        std::complex<double> rot0 = std::polar(1.0, 2.0 * M_PI * f0_ * tau);
        std::complex<double> step = std::polar(1.0, 2.0 * M_PI * df_ * tau);
        std::complex<double> acc = 0.0, ph = rot0;
        for (int i = 0; i < n_; ++i)
        {
            acc += y(i) * ph;
            ph *= step;
        }
        return acc;
    }

    // One coordinate cycle (tau -> phi_T -> phi_R) plus the least-squares
    // gamma on the target tensor x (residual plus the component itself).
    void refine(const Eigen::MatrixXcd &x, Mpc &c) const
    {
        const double bin = cs_.delay_bin_s();
        Eigen::VectorXcd at = steering_vector(tx_, c.phi_t_rad, fc_);
        Eigen::VectorXcd ar = steering_vector(rx_, c.phi_r_rad, fc_);

        // M1(i, mt) = (a_R^H X_i)_mt
        Eigen::MatrixXcd m1(n_, nt_);
        for (int j = 0; j < nt_; ++j)
            m1.col(j) = x.middleCols(j * nr_, nr_) * ar.conjugate();

        // tau
        Eigen::VectorXcd y = m1 * at.conjugate();
        double lo = std::max(0.0, c.tau_s - bin);
        double hi = std::min(cs_.unambiguous_delay_s(), c.tau_s + bin);
        c.tau_s = golden_max([&](double t) { return std::norm(correlate(y, t)); }, lo, hi,
                             ce_.refine_iters);

        // phi_T
        Eigen::VectorXcd phasor(n_);
        {
            std::complex<double> ph = std::polar(1.0, 2.0 * M_PI * f0_ * c.tau_s);
            std::complex<double> st = std::polar(1.0, 2.0 * M_PI * df_ * c.tau_s);
            for (int i = 0; i < n_; ++i)
            {
                phasor(i) = ph;
                ph *= st;
            }
        }
        Eigen::VectorXcd wt = m1.transpose() * phasor; // (nt)
        double step_rad = deg2rad(ce_.coarse_angle_step_deg);
        double tlo = std::max(deg2rad(sector_t_.lo_deg), c.phi_t_rad - step_rad);
        double thi = std::min(deg2rad(sector_t_.hi_deg), c.phi_t_rad + step_rad);
        c.phi_t_rad = golden_max(
            [&](double phi)
            {
                Eigen::VectorXcd a = steering_vector(tx_, phi, fc_);
                return std::norm(a.dot(wt)) / a.squaredNorm();
            },
            tlo, thi, ce_.refine_iters);
        at = steering_vector(tx_, c.phi_t_rad, fc_);

        // phi_R
        Eigen::MatrixXcd m2 = Eigen::MatrixXcd::Zero(n_, nr_);
        for (int j = 0; j < nt_; ++j)
            m2.noalias() += x.middleCols(j * nr_, nr_) * std::conj(at(j));
        Eigen::VectorXcd wr = m2.transpose() * phasor; // (nr)
        double rlo = c.phi_r_rad - step_rad;
        double rhi = c.phi_r_rad + step_rad;
        if (sector_r_.width_deg() < 360.0 - 1e-9)
        {
            rlo = std::max(deg2rad(sector_r_.lo_deg), rlo);
            rhi = std::min(deg2rad(sector_r_.hi_deg), rhi);
        }
        c.phi_r_rad = golden_max(
            [&](double phi)
            {
                Eigen::VectorXcd a = steering_vector(rx_, phi, fc_);
                return std::norm(a.dot(wr)) / a.squaredNorm();
            },
            rlo, rhi, ce_.refine_iters);
        c.phi_r_rad = wrap_pm_pi(c.phi_r_rad);
        ar = steering_vector(rx_, c.phi_r_rad, fc_);

        // gamma by least squares on the final signature
        for (int j = 0; j < nt_; ++j)
            m1.col(j) = x.middleCols(j * nr_, nr_) * ar.conjugate();
        y = m1 * at.conjugate();
        std::complex<double> corr = correlate(y, c.tau_s);
        double sig2 = double(n_) * at.squaredNorm() * ar.squaredNorm();
        c.gamma = corr / sig2;
    }

    Eigen::MatrixXcd synth_component(const Mpc &c) const
    {
        Eigen::VectorXcd at = steering_vector(tx_, c.phi_t_rad, fc_);
        Eigen::VectorXcd ar = steering_vector(rx_, c.phi_r_rad, fc_);
        Eigen::RowVectorXcd outer(nr_ * nt_);
        for (int j = 0; j < nt_; ++j)
            for (int i = 0; i < nr_; ++i)
                outer(j * nr_ + i) = ar(i) * at(j);
        Eigen::VectorXcd phasor(n_);
        std::complex<double> ph = std::polar(1.0, -2.0 * M_PI * f0_ * c.tau_s);
        std::complex<double> st = std::polar(1.0, -2.0 * M_PI * df_ * c.tau_s);
        for (int i = 0; i < n_; ++i)
        {
            phasor(i) = c.gamma * ph;
            ph *= st;
        }
        return phasor * outer;
    }

    void subtract(const Mpc &c)
    {
        Eigen::MatrixXcd m = synth_component(c);
        r_ -= m;
        rd_.noalias() -= w_ * m;
        bin_power_ = rd_.rowwise().squaredNorm();
    }

    const Eigen::MatrixXcd &residual() const { return r_; }
    Eigen::MatrixXcd &residual() { return r_; }
    double residual_power() const { return r_.squaredNorm(); }
    double bin_s() const { return cs_.delay_bin_s(); }

  private:
    const ArrayGeometry &tx_, &rx_;
    SoundingConfig cs_;
    ExtractionConfig ce_;
    int nr_, nt_, n_;
    double fc_ = 0.0, f0_ = 0.0, df_ = 0.0;
    AngleSector sector_t_, sector_r_;
    Grid grid_t_, grid_r_;
    Eigen::MatrixXcd w_;
    Eigen::MatrixXcd r_;         // tone-domain residual, exact
    Eigen::MatrixXcd rd_;        // delay-domain residual image (seeding only)
    Eigen::VectorXd bin_power_;  // per-delay-bin Frobenius power of rd_
};

} // namespace

ExtractionResult extract_mpcs(const CtfSnapshot &snapshot, const ArrayGeometry &tx,
                              const ArrayGeometry &rx, const SoundingConfig &cfg_s,
                              const ExtractionConfig &cfg_e)
{
    cfg_s.validate();
    cfg_e.validate();
    snapshot.validate_finite();
    if (snapshot.n_rx != rx.size() || snapshot.n_tx != tx.size() ||
        snapshot.n_tones != cfg_s.num_tones)
        throw std::invalid_argument("extract_mpcs: snapshot shape does not match arrays/config");

    ExtractionResult out;
    const double p0 = snapshot.total_power();
    if (p0 <= 0.0)
    {
        out.converged = true;
        return out;
    }

    SageEngine eng(snapshot, tx, rx, cfg_s, cfg_e);

    // successive cancellation with local polish of each new component
    double strongest = 0.0;
    while (int(out.mpcs.size()) < cfg_e.max_paths)
    {
        double res_ratio = eng.residual_power() / p0;
        if (res_ratio <= cfg_e.residual_target)
            break;
        auto seed = eng.coarse_seed();
        if (seed.metric <= 0.0)
            break;
        Mpc c;
        c.tau_s = double(seed.bin) * eng.bin_s();
        c.phi_t_rad = seed.phi_t;
        c.phi_r_rad = seed.phi_r;
        c.gamma = 0.0;
        eng.refine(eng.residual(), c);
        double p = c.power();
        if (p <= 0.0)
            break;
        if (!out.mpcs.empty() &&
            10.0 * std::log10(p / strongest) < -cfg_e.dynamic_range_db)
            break; // below the detection floor
        strongest = std::max(strongest, p);
        eng.subtract(c);
        out.mpcs.push_back(c);
    }

    // space-alternating re-refinement over all admitted components
    bool em_stable = false;
    double prev = eng.residual_power();
    for (int round = 0; round < cfg_e.em_rounds && !out.mpcs.empty(); ++round)
    {
        for (Mpc &c : out.mpcs)
        {
            Eigen::MatrixXcd x = eng.residual() + eng.synth_component(c);
            Mpc updated = c;
            eng.refine(x, updated);
            eng.residual() = x - eng.synth_component(updated);
            c = updated;
        }
        out.iterations_used = round + 1;
        double cur = eng.residual_power();
        if (cur <= 1e-14 * p0 ||
            std::abs(std::log(std::max(cur, 1e-300)) - std::log(std::max(prev, 1e-300))) <
                cfg_e.convergence_tol)
        {
            em_stable = true;
            break;
        }
        prev = cur;
    }

    out.residual_power_ratio = eng.residual_power() / p0;
    out.converged = em_stable || out.residual_power_ratio <= cfg_e.residual_target ||
                    out.mpcs.empty();
    std::sort(out.mpcs.begin(), out.mpcs.end(),
              [](const Mpc &a, const Mpc &b) { return a.power() > b.power(); });
    return out;
}

std::pair<CtfSnapshot, double> reconstruct_and_residual(const CtfSnapshot &snapshot,
                                                        std::span<const Mpc> mpcs,
                                                        const ArrayGeometry &tx,
                                                        const ArrayGeometry &rx,
                                                        const SoundingConfig &cfg)
{
    double p0 = snapshot.total_power();
    if (p0 <= 0.0)
        throw std::invalid_argument("reconstruct_and_residual: undefined residual ratio "
                                    "(zero-power snapshot)");
    CtfSnapshot rec = synthesize_ctf(mpcs, tx, rx, cfg);
    if (rec.n_rx != snapshot.n_rx || rec.n_tx != snapshot.n_tx || rec.n_tones != snapshot.n_tones)
        throw std::invalid_argument("reconstruct_and_residual: shape mismatch");
    rec.position = snapshot.position;
    rec.d3d_m = snapshot.d3d_m;
    rec.state = snapshot.state;
    rec.snapshot_id = snapshot.snapshot_id;
    double res = (snapshot.h - rec.h).squaredNorm() / p0;
    return {std::move(rec), res};
}

namespace
{

struct Feature
{
    double u = 0.0; // tau / delay_scale
    double phi_t = 0.0;
    double phi_r = 0.0;
};

double ang_diff(double a, double b) { return wrap_pm_pi(a - b); }

double feat_dist2(const Feature &a, const Feature &b)
{
    double du = a.u - b.u;
    double dt = ang_diff(a.phi_t, b.phi_t);
    double dr = ang_diff(a.phi_r, b.phi_r);
    return du * du + dt * dt + dr * dr;
}

struct KpmRun
{
    std::vector<int> labels;
    std::vector<Feature> centroids;
    std::vector<double> cpower;
    double wcss = 0.0;
};

// circular-aware power-weighted centroid
Feature weighted_centroid(const std::vector<Feature> &f, const std::vector<double> &pw,
                          const std::vector<int> &labels, int cluster)
{
    double wsum = 0.0, usum = 0.0;
    std::complex<double> t(0, 0), r(0, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        if (labels[i] != cluster)
            continue;
        wsum += pw[i];
        usum += pw[i] * f[i].u;
        t += pw[i] * std::polar(1.0, f[i].phi_t);
        r += pw[i] * std::polar(1.0, f[i].phi_r);
    }
    Feature c;
    if (wsum > 0.0)
    {
        c.u = usum / wsum;
        c.phi_t = std::arg(t);
        c.phi_r = std::arg(r);
    }
    return c;
}

KpmRun run_kpm(const std::vector<Feature> &f, const std::vector<double> &pw, int k)
{
    const int n = int(f.size());
    KpmRun run;
    run.labels.assign(n, 0);

    // deterministic init: strongest component, then power-weighted
    // farthest-point; ties broken by index order of the canonical sort
    std::vector<int> seeds;
    int first = int(std::max_element(pw.begin(), pw.end()) - pw.begin());
    seeds.push_back(first);
    std::vector<double> mind(n, std::numeric_limits<double>::infinity());
    while (int(seeds.size()) < k)
    {
        for (int i = 0; i < n; ++i)
            mind[i] = std::min(mind[i], feat_dist2(f[i], f[seeds.back()]));
        int next = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i)
        {
            double score = pw[i] * mind[i];
            if (score > best + 1e-15 * std::abs(best))
            {
                best = score;
                next = i;
            }
        }
        seeds.push_back(next);
    }
    run.centroids.resize(k);
    for (int c = 0; c < k; ++c)
        run.centroids[c] = f[seeds[c]];

    for (int iter = 0; iter < 100; ++iter)
    {
        bool changed = false;
        for (int i = 0; i < n; ++i)
        {
            int bestc = 0;
            double bestd = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c)
            {
                double d = feat_dist2(f[i], run.centroids[c]);
                if (d < bestd)
                {
                    bestd = d;
                    bestc = c;
                }
            }
            if (run.labels[i] != bestc)
            {
                run.labels[i] = bestc;
                changed = true;
            }
        }
        for (int c = 0; c < k; ++c)
            run.centroids[c] = weighted_centroid(f, pw, run.labels, c);
        if (!changed && iter > 0)
            break;
    }
    run.cpower.assign(k, 0.0);
    run.wcss = 0.0;
    for (int i = 0; i < n; ++i)
    {
        run.cpower[run.labels[i]] += pw[i];
        run.wcss += pw[i] * feat_dist2(f[i], run.centroids[run.labels[i]]);
    }
    return run;
}

} // namespace

ClusterResult cluster_kpm(std::span<const Mpc> mpcs, std::optional<int> k, double delay_scale_s,
                          std::uint64_t /*seed*/)
{
    if (mpcs.empty())
        throw std::invalid_argument("cluster_kpm: empty component list");
    if (delay_scale_s <= 0.0)
        throw std::invalid_argument("cluster_kpm: delay_scale must be positive");
    const int n = int(mpcs.size());
    if (k && (*k < 1 || *k > n))
        throw std::invalid_argument("cluster_kpm: k must lie in [1, #components]");

    // canonical order makes the farthest-point init permutation-invariant
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b)
              {
                  if (mpcs[a].power() != mpcs[b].power())
                      return mpcs[a].power() > mpcs[b].power();
                  if (mpcs[a].tau_s != mpcs[b].tau_s)
                      return mpcs[a].tau_s < mpcs[b].tau_s;
                  if (mpcs[a].phi_t_rad != mpcs[b].phi_t_rad)
                      return mpcs[a].phi_t_rad < mpcs[b].phi_t_rad;
                  return mpcs[a].phi_r_rad < mpcs[b].phi_r_rad;
              });
    std::vector<Feature> f(n);
    std::vector<double> pw(n);
    for (int i = 0; i < n; ++i)
    {
        const Mpc &m = mpcs[order[i]];
        f[i] = {m.tau_s / delay_scale_s, m.phi_t_rad, m.phi_r_rad};
        pw[i] = m.power();
    }

    int chosen = 1;
    KpmRun best;
    if (k)
    {
        chosen = *k;
        best = run_kpm(f, pw, chosen);
    }
    else
    {
        // elbow: largest drop in the relative improvement of the weighted WCSS
        const int kmax = std::min(n, 10);
        std::vector<KpmRun> runs;
        runs.reserve(kmax);
        for (int kk = 1; kk <= kmax; ++kk)
            runs.push_back(run_kpm(f, pw, kk));
        std::vector<double> improv(kmax + 2, 0.0); // improv[kk] for kk>=2
        for (int kk = 2; kk <= kmax; ++kk)
        {
            double prev = runs[kk - 2].wcss;
            improv[kk] = prev > 0.0 ? (prev - runs[kk - 1].wcss) / prev : 0.0;
        }
        chosen = 1;
        double bestdrop = -1.0;
        for (int kk = 2; kk <= kmax; ++kk)
        {
            double drop = improv[kk] - (kk + 1 <= kmax ? improv[kk + 1] : 0.0);
            if (drop > bestdrop + 1e-12)
            {
                bestdrop = drop;
                chosen = kk;
            }
        }
        if (kmax == 1)
            chosen = 1;
        best = runs[chosen - 1];
    }

    ClusterResult res;
    res.k = chosen;
    res.labels.assign(n, 0);
    for (int i = 0; i < n; ++i)
        res.labels[order[i]] = best.labels[i];
    res.centroids.resize(chosen);
    for (int c = 0; c < chosen; ++c)
    {
        res.centroids[c].tau_s = best.centroids[c].u * delay_scale_s;
        res.centroids[c].phi_t_rad = best.centroids[c].phi_t;
        res.centroids[c].phi_r_rad = best.centroids[c].phi_r;
        res.centroids[c].power = best.cpower[c];
    }
    return res;
}

} // namespace chanlsp
