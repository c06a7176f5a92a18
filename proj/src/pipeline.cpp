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

#include "chanlsp/pipeline.hpp"

#include "chanlsp/csv.hpp"
#include "chanlsp/parallel.hpp"
#include "chanlsp/pathloss_fit.hpp"
#include "chanlsp/rng.hpp"
#include "chanlsp/sha256.hpp"
#include "chanlsp/spatial_consistency.hpp"
#include "chanlsp/stats.hpp"
#include "chanlsp/toml_lite.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <stdexcept>

namespace chanlsp
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

constexpr const char *tool_version = "chanlsp 0.1.0";

// ITU-R site-general ABG reference rows (above-rooftop = UMa,
// below-rooftop = UMi)
struct AbgRow
{
    Scenario scenario;
    PropState state;
    AbgParams params;
};
const AbgRow itu_abg_rows[] = {
    {Scenario::UMa, PropState::LoS, {2.29, 28.6, 1.96, 3.48}},
    {Scenario::UMa, PropState::NLoS, {4.39, -6.27, 2.30, 6.89}},
    {Scenario::UMi, PropState::LoS, {2.07, 31.23, 2.06, 4.91}},
    {Scenario::UMi, PropState::NLoS, {3.73, 16.02, 2.26, 7.62}},
};

struct AreaData
{
    std::string area;
    Scenario scenario = Scenario::UMa;
    SoundingConfig sounding;
    ArrayGeometry tx;
    ArrayGeometry rx;
    ArrayKind bs_kind = ArrayKind::Ula;
    Eigen::Vector2d bs_position = Eigen::Vector2d::Zero();
    double bs_orientation_deg = 0.0;
    std::vector<CtfSnapshot> snapshots;
};

AreaData load_input(const std::string &path, std::uint64_t seed)
{
    AreaData a;
    if (is_scene_file(path))
    {
        SceneFile sc = load_scene(path);
        a.area = sc.area;
        a.scenario = sc.scenario;
        a.sounding = sc.sounding;
        a.tx = sc.tx_array.build(sc.sounding);
        a.rx = sc.rx_array.build(sc.sounding);
        a.bs_kind = sc.tx_array.kind;
        a.bs_position = sc.bs_position;
        a.bs_orientation_deg = sc.bs_orientation_deg;
        a.snapshots = synthesize_scene(sc, seed);
    }
    else
    {
        RouteFile rt = load_route(path);
        a.area = rt.area;
        a.scenario = rt.scenario;
        a.sounding = rt.sounding;
        a.tx = rt.tx_array.build(rt.sounding);
        a.rx = rt.rx_array.build(rt.sounding);
        a.bs_kind = rt.tx_array.kind;
        a.bs_position = rt.bs_position;
        a.bs_orientation_deg = rt.bs_orientation_deg;
        a.snapshots = std::move(rt.snapshots);
    }
    return a;
}

struct SnapshotProduct
{
    long id = 0;
    LspRecord lsp;
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    std::vector<Mpc> mpcs;
    double residual = 0.0;
    bool converged = false;
};

std::string fmt(double v) { return format_double(v); }

} // namespace

std::vector<CtfSnapshot> synthesize_scene(const SceneFile &scene, std::uint64_t seed)
{
    Rng base(seed);
    std::vector<CtfSnapshot> out(scene.snapshots.size());
    ArrayGeometry tx = scene.tx_array.build(scene.sounding);
    ArrayGeometry rx = scene.rx_array.build(scene.sounding);
    for (std::size_t i = 0; i < scene.snapshots.size(); ++i)
    {
        const SceneSnapshot &s = scene.snapshots[i];
        CtfSnapshot snap = synthesize_ctf(s.mpcs, tx, rx, scene.sounding);
        snap.snapshot_id = s.id;
        snap.position = s.position;
        snap.d3d_m = s.d3d_m;
        snap.state = s.state;
        if (scene.snr_db)
        {
            double p_entry = snap.total_power() / double(snap.h.size());
            double sigma = std::sqrt(p_entry * std::pow(10.0, -*scene.snr_db / 10.0));
            Rng rng = base.derive(0x6e6f6973 + std::uint64_t(s.id));
            for (Eigen::Index c = 0; c < snap.h.cols(); ++c)
                for (Eigen::Index r = 0; r < snap.h.rows(); ++r)
                    snap.h(r, c) += sigma * rng.cnormal();
        }
        out[i] = std::move(snap);
    }
    return out;
}

PipelineConfig load_pipeline_config(const std::string &path)
{
    TomlLite t = TomlLite::parse_file(path);
    PipelineConfig cfg;
    fs::path base = fs::path(path).parent_path();

    auto resolve = [&](const std::string &p)
    { return fs::path(p).is_absolute() ? p : (base / p).string(); };

    if (auto in = t.get_string("input"))
        cfg.inputs.push_back(resolve(*in));
    for (int i = 0; i < 16; ++i)
        if (auto in = t.get_string("input" + std::to_string(i)))
            cfg.inputs.push_back(resolve(*in));
    if (cfg.inputs.empty())
        throw std::invalid_argument("config: at least one 'input' file is required");

    cfg.output_dir = t.string_or("output_dir", "out");
    if (const char *env = std::getenv("CHANLSP_OUT"))
        cfg.output_dir = env;
    else if (!fs::path(cfg.output_dir).is_absolute())
        cfg.output_dir = (base / cfg.output_dir).string();

    cfg.seed = std::uint64_t(t.number_or("seed", 1));
    cfg.dedup_threshold_m = t.number_or("dedup_threshold_m", 1.0);
    cfg.threads = unsigned(t.number_or("threads", 0));

    cfg.extraction.max_paths = int(t.number_or("extraction.max_paths", 60));
    cfg.extraction.residual_target = t.number_or("extraction.residual_target", 0.05);
    cfg.extraction.dynamic_range_db = t.number_or("extraction.dynamic_range_db", 30.0);
    cfg.extraction.coarse_angle_step_deg = t.number_or("extraction.coarse_angle_step_deg", 2.0);
    cfg.extraction.refine_iters = int(t.number_or("extraction.refine_iters", 36));
    cfg.extraction.em_rounds = int(t.number_or("extraction.em_rounds", 3));
    cfg.extraction.convergence_tol = t.number_or("extraction.convergence_tol", 1e-4);

    cfg.binning.n_min = int(t.number_or("binning.n_min", 20));
    cfg.binning.max_width_m = t.number_or("binning.max_width_m", 50.0);
    cfg.trend_bootstrap_b = int(t.number_or("trend.bootstrap_b", 1000));

    cfg.spatial_step_m = t.number_or("spatial.step_m", 1.0);
    cfg.spatial_bootstrap_b = int(t.number_or("spatial.bootstrap_b", 400));
    cfg.spatial_block_len = int(t.number_or("spatial.block_len", 0));

    cfg.robust_fit.tukey_k = t.number_or("robust_fit.tukey_k", 4.685);
    cfg.robust_fit.mad_scale = t.number_or("robust_fit.mad_scale", 0.6745);
    cfg.robust_fit.max_irls_iters = int(t.number_or("robust_fit.max_irls_iters", 50));
    cfg.robust_fit.tol = t.number_or("robust_fit.tol", 1e-10);
    cfg.robust_fit.rescale_each_iter = t.bool_or("robust_fit.rescale_each_iter", false);

    if (auto anchors = t.get_string("anchors_csv"))
        cfg.anchors_csv = resolve(*anchors);
    cfg.route_anchor_freq_ghz = t.number_or("route_anchor_freq_ghz", 4.85);
    cfg.canonical_text = t.canonical();
    return cfg;
}

RunReport run_pipeline(const PipelineConfig &cfg)
{
    RunReport report;
    report.seed = cfg.seed;
    report.output_dir = cfg.output_dir;
    report.config_sha256 = sha256_hex(cfg.canonical_text);

    fs::create_directories(cfg.output_dir);
    auto emit = [&](const std::string &name, const std::string &content)
    {
        write_text_file((fs::path(cfg.output_dir) / name).string(), content);
        report.artifacts.push_back({name, sha256_hex(content), content.size()});
    };
    std::string provenance_comment = "seed=" + std::to_string(cfg.seed) +
                                     " config_sha256=" + report.config_sha256 +
                                     " tool=" + tool_version;

    // ---- stage: load + validity filtering + deduplication -----------------
    std::vector<AreaData> areas;
    for (const std::string &path : cfg.inputs)
        areas.push_back(load_input(path, cfg.seed));

    for (AreaData &a : areas)
    {
        RouteDataset meta;
        meta.area = a.area;
        meta.scenario = a.scenario;
        meta.bs_position = a.bs_position;
        meta.bs_orientation_rad = deg2rad(a.bs_orientation_deg);
        for (std::size_t i = 0; i < a.snapshots.size(); ++i)
        {
            RoutePoint p;
            p.position = a.snapshots[i].position;
            p.lsp.snapshot_id = long(i); // index into a.snapshots
            meta.snapshots.push_back(p);
        }
        AngleSector sector = a.bs_kind == ArrayKind::Ula ? AngleSector{-50.0, 50.0}
                                                         : AngleSector{-180.0, 180.0};
        RouteDataset kept = deduplicate(filter_valid(meta, sector), cfg.dedup_threshold_m);
        std::vector<CtfSnapshot> filtered;
        filtered.reserve(kept.snapshots.size());
        for (const RoutePoint &p : kept.snapshots)
            filtered.push_back(std::move(a.snapshots[std::size_t(p.lsp.snapshot_id)]));
        report.notes.push_back(a.area + ": " + std::to_string(filtered.size()) + " of " +
                               std::to_string(meta.snapshots.size()) + " snapshots retained");
        a.snapshots = std::move(filtered);
    }

    // ---- stage: per-snapshot extraction and LSPs ---------------------------
    std::vector<std::vector<SnapshotProduct>> products(areas.size());
    for (std::size_t ai = 0; ai < areas.size(); ++ai)
    {
        const AreaData &a = areas[ai];
        products[ai].resize(a.snapshots.size());
        parallel_for(
            a.snapshots.size(),
            [&](std::size_t i)
            {
                const CtfSnapshot &snap = a.snapshots[i];
                ExtractionResult ex = extract_mpcs(snap, a.tx, a.rx, a.sounding, cfg.extraction);
                if (ex.mpcs.empty())
                    throw std::runtime_error("extraction stage: no components recovered for " +
                                             a.area + " snapshot " +
                                             std::to_string(snap.snapshot_id));
                SnapshotProduct p;
                p.id = snap.snapshot_id;
                p.position = snap.position;
                p.mpcs = std::move(ex.mpcs);
                p.residual = ex.residual_power_ratio;
                p.converged = ex.converged;
                p.lsp = make_lsp_record(snap.snapshot_id, snap.d3d_m, snap.state, p.mpcs,
                                        a.sounding);
                products[ai][i] = std::move(p);
            },
            cfg.threads);
    }

    // ---- artifact: per-snapshot MPC lists ---------------------------------
    {
        json j;
        j["schema"] = "chanlsp-extraction";
        j["provenance"] = {{"seed", cfg.seed},
                           {"config_sha256", report.config_sha256},
                           {"tool", tool_version}};
        json areas_json = json::array();
        for (std::size_t ai = 0; ai < areas.size(); ++ai)
        {
            json sn = json::array();
            for (const SnapshotProduct &p : products[ai])
            {
                json mp = json::array();
                for (const Mpc &m : p.mpcs)
                    mp.push_back(json{{"gamma", {m.gamma.real(), m.gamma.imag()}},
                                      {"tau_ns", m.tau_s * 1e9},
                                      {"phi_t_deg", rad2deg(m.phi_t_rad)},
                                      {"phi_r_deg", rad2deg(m.phi_r_rad)}});
                sn.push_back(json{{"id", p.id},
                                  {"residual_power_ratio", p.residual},
                                  {"converged", p.converged},
                                  {"mpcs", std::move(mp)}});
            }
            areas_json.push_back(
                json{{"area", areas[ai].area}, {"snapshots", std::move(sn)}});
        }
        j["areas"] = std::move(areas_json);
        emit("mpcs.json", j.dump(1) + "\n");
    }

    // ---- artifact: LSP records --------------------------------------------
    {
        CsvWriter w;
        w.comment(provenance_comment);
        w.header({"area", "snapshot_id", "d3d_m", "state", "pl_db", "ds_ns", "asa_deg", "asd_deg",
                  "k_db"});
        for (std::size_t ai = 0; ai < areas.size(); ++ai)
            for (const SnapshotProduct &p : products[ai])
                w.row({areas[ai].area, std::to_string(p.lsp.snapshot_id), fmt(p.lsp.d3d_m),
                       to_string(p.lsp.state), fmt(p.lsp.pl_db), fmt(p.lsp.ds_s * 1e9),
                       fmt(p.lsp.asa_deg), fmt(p.lsp.asd_deg),
                       p.lsp.k_db ? fmt(*p.lsp.k_db) : "---"});
        emit("lsp_records.csv", w.str());
    }

    // ---- artifact: LSP statistics (log10 and linear means) ----------------
    {
        CsvWriter w;
        w.comment(provenance_comment);
        w.header({"area", "scenario", "state", "param", "mean_linear", "mu_log10", "sigma_log10",
                  "count"});
        for (std::size_t ai = 0; ai < areas.size(); ++ai)
        {
            for (PropState st : {PropState::LoS, PropState::NLoS})
            {
                auto stat_row = [&](const char *name, auto getter, bool log_of_seconds)
                {
                    std::vector<double> lin, lg;
                    for (const SnapshotProduct &p : products[ai])
                    {
                        if (p.lsp.state != st)
                            continue;
                        auto v = getter(p.lsp);
                        if (!v)
                            continue;
                        lin.push_back(*v);
                        if (*v > 0.0)
                            lg.push_back(std::log10(*v));
                    }
                    if (lin.empty())
                        return;
                    double mu = 0.0, sd = 0.0;
                    if (!lg.empty())
                    {
                        mu = mean(lg);
                        for (double x : lg)
                            sd += (x - mu) * (x - mu);
                        sd = std::sqrt(sd / double(lg.size()));
                    }
                    (void)log_of_seconds;
                    w.row({areas[ai].area, to_string(areas[ai].scenario), to_string(st), name,
                           fmt(mean(lin)), fmt(mu), fmt(sd), std::to_string(lin.size())});
                };
                stat_row("ds_s", [](const LspRecord &r) { return std::optional<double>(r.ds_s); },
                         true);
                stat_row("asa_deg",
                         [](const LspRecord &r) { return std::optional<double>(r.asa_deg); },
                         false);
                stat_row("asd_deg",
                         [](const LspRecord &r) { return std::optional<double>(r.asd_deg); },
                         false);
                stat_row("k_db", [](const LspRecord &r) { return r.k_db; }, false);
            }
        }
        emit("lsp_stats.csv", w.str());
    }

    // ---- stage: path-loss fits --------------------------------------------
    std::map<std::pair<std::size_t, PropState>, PathlossFit> ci_fits;
    {
        CsvWriter w;
        w.comment(provenance_comment);
        w.header({"area", "scenario", "state", "model", "n_or_alpha", "beta_db", "gamma",
                  "sigma_db"});
        for (std::size_t ai = 0; ai < areas.size(); ++ai)
        {
            for (PropState st : {PropState::LoS, PropState::NLoS})
            {
                std::vector<PlSample> samples;
                for (const SnapshotProduct &p : products[ai])
                    if (p.lsp.state == st)
                        samples.push_back({p.lsp.d3d_m, p.lsp.pl_db, st});
                if (samples.size() < 2)
                {
                    report.notes.push_back(areas[ai].area + "/" + to_string(st) +
                                           ": too few samples for path-loss fits");
                    continue;
                }
                try
                {
                    PathlossFit ci = fit_ci(samples, areas[ai].sounding.center_frequency_hz);
                    PathlossFit fi = fit_fi(samples);
                    ci_fits.emplace(std::make_pair(ai, st), ci);
                    w.row({areas[ai].area, to_string(areas[ai].scenario), to_string(st), "CI",
                           fmt(ci.n_or_alpha), "", "", fmt(ci.sigma_db)});
                    w.row({areas[ai].area, to_string(areas[ai].scenario), to_string(st), "FI",
                           fmt(fi.n_or_alpha), fmt(fi.beta_db), "", fmt(fi.sigma_db)});
                }
                catch (const std::invalid_argument &e)
                {
                    report.notes.push_back(areas[ai].area + "/" + to_string(st) +
                                           ": path-loss fit skipped (" + e.what() + ")");
                }
            }
            for (const AbgRow &row : itu_abg_rows)
                if (row.scenario == areas[ai].scenario)
                    w.row({areas[ai].area, to_string(areas[ai].scenario), to_string(row.state),
                           "ABG-ref", fmt(row.params.alpha), fmt(row.params.beta_db),
                           fmt(row.params.gamma), fmt(row.params.sigma_db)});
        }
        emit("plfits.csv", w.str());
    }

    // ---- stage: distance trends -------------------------------------------
    {
        CsvWriter w;
        w.comment(provenance_comment);
        w.header({"area", "bin_center_m", "count", "median", "ci5", "ci95", "lsp", "state"});
        for (std::size_t ai = 0; ai < areas.size(); ++ai)
        {
            RouteDataset route;
            route.area = areas[ai].area;
            route.scenario = areas[ai].scenario;
            for (const SnapshotProduct &p : products[ai])
                route.snapshots.push_back({p.lsp, p.position});
            for (LspKind lsp : {LspKind::DS, LspKind::ASA, LspKind::ASD})
                for (PropState st : {PropState::LoS, PropState::NLoS})
                {
                    auto bins = distance_trend(route, lsp, st, cfg.binning,
                                               Rng(cfg.seed).derive(1000 + ai).seed(),
                                               cfg.trend_bootstrap_b);
                    for (const BinSummary &b : bins)
                    {
                        double scale = lsp == LspKind::DS ? 1e9 : 1.0; // report DS in ns
                        w.row({areas[ai].area, fmt(b.center_m), std::to_string(b.count),
                               fmt(b.median * scale), fmt(b.ci_low * scale),
                               fmt(b.ci_high * scale), to_string(lsp), to_string(st)});
                    }
                }
        }
        emit("trends.csv", w.str());
    }

    // ---- stage: spatial consistency ----------------------------------------
    {
        CsvWriter w;
        w.comment(provenance_comment);
        w.header({"area", "lsp", "state", "d_corr_m", "ci_low", "ci_high", "n_fail"});
        for (std::size_t ai = 0; ai < areas.size(); ++ai)
        {
            for (PropState st : {PropState::LoS, PropState::NLoS})
            {
                std::vector<Eigen::Vector2d> pos;
                std::vector<std::vector<double>> vals(4);
                for (const SnapshotProduct &p : products[ai])
                {
                    if (p.lsp.state != st)
                        continue;
                    pos.push_back(p.position);
                    const PathlossFit *ci = nullptr;
                    auto it = ci_fits.find(std::make_pair(ai, st));
                    if (it != ci_fits.end())
                        ci = &it->second;
                    vals[0].push_back(ci ? p.lsp.pl_db - ci->evaluate(p.lsp.d3d_m) : 0.0);
                    vals[1].push_back(p.lsp.ds_s);
                    vals[2].push_back(p.lsp.asa_deg);
                    vals[3].push_back(p.lsp.asd_deg);
                }
                const LspKind kinds[4] = {LspKind::PL, LspKind::DS, LspKind::ASA, LspKind::ASD};
                if (pos.size() < 8)
                {
                    report.notes.push_back(areas[ai].area + "/" + to_string(st) +
                                           ": segment too short for spatial consistency");
                    continue;
                }
                for (int k = 0; k < 4; ++k)
                {
                    try
                    {
                        SpatialTrace tr =
                            resample_arclength(pos, vals[std::size_t(k)], cfg.spatial_step_m);
                        tr.lsp = kinds[k];
                        tr.state = st;
                        DecorrEstimate est = block_bootstrap_ci(
                            tr, cfg.spatial_block_len, cfg.spatial_bootstrap_b,
                            Rng(cfg.seed).derive(2000 + 16 * ai + std::size_t(k) * 2 +
                                                 (st == PropState::LoS ? 0 : 1))
                                .seed());
                        w.row({areas[ai].area, to_string(kinds[k]), to_string(st),
                               fmt(est.d_corr_m), fmt(est.ci_low_m), fmt(est.ci_high_m),
                               std::to_string(est.n_fail)});
                    }
                    catch (const std::exception &e)
                    {
                        report.notes.push_back(areas[ai].area + "/" + to_string(st) + "/" +
                                               to_string(kinds[k]) +
                                               ": spatial fit skipped (" + e.what() + ")");
                    }
                }
            }
        }
        emit("spatial.csv", w.str());
    }

    // ---- stage: frequency-continuous models --------------------------------
    {
        std::vector<RouteLspMean> route_means;
        for (std::size_t ai = 0; ai < areas.size(); ++ai)
            for (PropState st : {PropState::LoS, PropState::NLoS})
                for (LspKind lsp : {LspKind::DS, LspKind::ASA, LspKind::ASD})
                {
                    std::vector<double> v;
                    for (const SnapshotProduct &p : products[ai])
                        if (p.lsp.state == st)
                            v.push_back(lsp_value(p.lsp, lsp));
                    if (v.empty())
                        continue;
                    route_means.push_back(
                        {areas[ai].area, areas[ai].scenario, st, lsp, mean(v)});
                }

        std::vector<AnchorPoint> literature;
        if (!cfg.anchors_csv.empty())
            literature = load_anchor_csv(cfg.anchors_csv);
        else
        {
            auto all = reference_anchor_table();
            literature.assign(all.begin(), all.end());
        }
        std::erase_if(literature, [](const AnchorPoint &a) { return a.is_route; });

        std::vector<FreqModel> models;
        std::vector<std::vector<AnchorPoint>> model_anchors;
        std::set<Scenario> scenarios;
        for (const AreaData &a : areas)
            scenarios.insert(a.scenario);
        CsvWriter w;
        w.comment(provenance_comment);
        w.header({"scenario", "state", "lsp", "a", "b", "constraint_active", "n_anchors",
                  "boundary_log_gap"});
        for (Scenario sc : scenarios)
            for (PropState st : {PropState::LoS, PropState::NLoS})
                for (LspKind lsp : {LspKind::DS, LspKind::ASA, LspKind::ASD})
                {
                    auto anchors = build_anchor_set(route_means, literature, sc, st, lsp,
                                                    cfg.route_anchor_freq_ghz);
                    try
                    {
                        FreqModel m = fit_freq_model(anchors, cfg.robust_fit);
                        GapReport gap = continuity_check(m);
                        w.row({to_string(sc), to_string(st), to_string(lsp), fmt(m.a), fmt(m.b),
                               m.constraint_active ? "true" : "false",
                               std::to_string(m.n_anchors), fmt(gap.log_gap)});
                        models.push_back(m);
                        model_anchors.push_back(std::move(anchors));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        report.notes.push_back(to_string(sc) + "/" + to_string(st) + "/" +
                                               to_string(lsp) + ": frequency fit skipped (" +
                                               e.what() + ")");
                    }
                }
        emit("freq_models.csv", w.str());

        json prov{{"seed", cfg.seed},
                  {"config_sha256", report.config_sha256},
                  {"tool", tool_version}};
        emit("freq_models.json", models_to_json(models, prov.dump()));

        // plot data: fitted curves, 3GPP references and the anchors
        CsvWriter pw;
        pw.comment(provenance_comment);
        pw.header({"series", "scenario", "state", "lsp", "freq_ghz", "value"});
        for (std::size_t mi = 0; mi < models.size(); ++mi)
        {
            const FreqModel &m = models[mi];
            for (double f = 4.0; f <= 28.0 + 1e-9; f += 0.5)
                pw.row({"thiswork", to_string(m.scenario), to_string(m.state), to_string(m.lsp),
                        fmt(f), fmt(eval_freq_model(m, f))});
            if (const Gpp3Model *g = find_3gpp(m.scenario, m.state, m.lsp))
                for (double f = 4.0; f <= 28.0 + 1e-9; f += 0.5)
                    pw.row({"3gpp", to_string(m.scenario), to_string(m.state), to_string(m.lsp),
                            fmt(f), fmt(eval_3gpp(*g, f))});
            for (const AnchorPoint &a : model_anchors[mi])
                pw.row({a.is_route ? "route-anchor" : "lit-anchor", to_string(a.scenario),
                        to_string(a.state), to_string(a.lsp), fmt(a.freq_ghz), fmt(a.value)});
        }
        emit("plot_freq_models.csv", pw.str());
    }

    // ---- run report ---------------------------------------------------------
    emit("report.json", report_to_json(report));
    return report;
}

std::string report_to_json(const RunReport &report)
{
    json j;
    j["schema"] = "chanlsp-report";
    j["provenance"] = {{"seed", report.seed},
                       {"config_sha256", report.config_sha256},
                       {"tool", tool_version}};
    json arts = json::array();
    for (const auto &a : report.artifacts)
        arts.push_back(json{{"name", a.name}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    j["artifacts"] = std::move(arts);
    j["notes"] = report.notes;
    return j.dump(1) + "\n";
}

} // namespace chanlsp
