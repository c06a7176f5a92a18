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

#include "chanlsp/csv.hpp"
#include "chanlsp/pathloss_fit.hpp"
#include "chanlsp/demo_scene.hpp"
#include "chanlsp/pipeline.hpp"
#include "chanlsp/rng.hpp"
#include "chanlsp/spatial_consistency.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace chanlsp;
using nlohmann::json;

namespace
{

// Extraction bundle written by `extract` and consumed by `lsp`: sounding
// config plus per-snapshot metadata and components.
struct ExtractionBundle
{
    SoundingConfig sounding;
    struct Entry
    {
        long id;
        Eigen::Vector2d position;
        double d3d_m;
        PropState state;
        double residual;
        std::vector<Mpc> mpcs;
    };
    std::vector<Entry> entries;
};

std::string bundle_to_json(const ExtractionBundle &b)
{
    json j;
    j["schema"] = "chanlsp-extraction-bundle";
    j["sounding"] = {{"center_frequency_hz", b.sounding.center_frequency_hz},
                     {"num_tones", b.sounding.num_tones},
                     {"tone_spacing_hz", b.sounding.tone_spacing_hz},
                     {"bandwidth_hz", b.sounding.bandwidth_hz}};
    json arr = json::array();
    for (const auto &e : b.entries)
    {
        json mp = json::array();
        for (const Mpc &m : e.mpcs)
            mp.push_back(json{{"gamma", {m.gamma.real(), m.gamma.imag()}},
                              {"tau_ns", m.tau_s * 1e9},
                              {"phi_t_deg", rad2deg(m.phi_t_rad)},
                              {"phi_r_deg", rad2deg(m.phi_r_rad)}});
        arr.push_back(json{{"id", e.id},
                           {"position", {e.position.x(), e.position.y()}},
                           {"d3d_m", e.d3d_m},
                           {"state", to_string(e.state)},
                           {"residual_power_ratio", e.residual},
                           {"mpcs", std::move(mp)}});
    }
    j["snapshots"] = std::move(arr);
    return j.dump(1) + "\n";
}

ExtractionBundle bundle_from_json(const std::string &path)
{
    json j = json::parse(read_text_file(path));
    if (j.value("schema", "") != "chanlsp-extraction-bundle")
        throw std::invalid_argument("schema error: not an extraction bundle: " + path);
    ExtractionBundle b;
    b.sounding.center_frequency_hz = j["sounding"]["center_frequency_hz"].get<double>();
    b.sounding.num_tones = j["sounding"]["num_tones"].get<int>();
    b.sounding.tone_spacing_hz = j["sounding"]["tone_spacing_hz"].get<double>();
    b.sounding.bandwidth_hz = j["sounding"]["bandwidth_hz"].get<double>();
    for (const json &s : j["snapshots"])
    {
        ExtractionBundle::Entry e;
        e.id = s["id"].get<long>();
        e.position = {s["position"][0].get<double>(), s["position"][1].get<double>()};
        e.d3d_m = s["d3d_m"].get<double>();
        e.state = prop_state_from_string(s["state"].get<std::string>());
        e.residual = s.value("residual_power_ratio", 0.0);
        for (const json &m : s["mpcs"])
        {
            Mpc p;
            p.gamma = {m["gamma"][0].get<double>(), m["gamma"][1].get<double>()};
            p.tau_s = m["tau_ns"].get<double>() * 1e-9;
            p.phi_t_rad = deg2rad(m["phi_t_deg"].get<double>());
            p.phi_r_rad = deg2rad(m["phi_r_deg"].get<double>());
            e.mpcs.push_back(p);
        }
        b.entries.push_back(std::move(e));
    }
    return b;
}

struct LspCsv
{
    std::vector<LspRecord> records;
    std::vector<Eigen::Vector2d> positions;
    bool has_positions = false;
};

std::string lsp_to_csv(const LspCsv &t)
{
    CsvWriter w;
    w.header({"snapshot_id", "d3d_m", "state", "pl_db", "ds_ns", "asa_deg", "asd_deg", "k_db",
              "x_m", "y_m"});
    for (std::size_t i = 0; i < t.records.size(); ++i)
    {
        const LspRecord &r = t.records[i];
        Eigen::Vector2d p = i < t.positions.size() ? t.positions[i] : Eigen::Vector2d::Zero();
        w.row({std::to_string(r.snapshot_id), format_double(r.d3d_m), to_string(r.state),
               format_double(r.pl_db), format_double(r.ds_s * 1e9), format_double(r.asa_deg),
               format_double(r.asd_deg), r.k_db ? format_double(*r.k_db) : "---",
               format_double(p.x()), format_double(p.y())});
    }
    return w.str();
}

LspCsv lsp_from_csv(const std::string &path)
{
    CsvTable t = parse_csv(read_text_file(path));
    LspCsv out;
    int id = t.column_index("snapshot_id"), d = t.column_index("d3d_m"),
        st = t.column_index("state"), pl = t.column_index("pl_db"), ds = t.column_index("ds_ns"),
        asa = t.column_index("asa_deg"), asd = t.column_index("asd_deg"),
        k = t.column_index("k_db"), x = t.column_index("x_m"), y = t.column_index("y_m");
    if (id < 0 || d < 0 || st < 0 || pl < 0 || ds < 0 || asa < 0 || asd < 0)
        throw std::invalid_argument("LSP CSV: missing required columns");
    out.has_positions = x >= 0 && y >= 0;
    for (const auto &row : t.rows)
    {
        LspRecord r;
        r.snapshot_id = std::stol(row.at(id));
        r.d3d_m = std::stod(row.at(d));
        r.state = prop_state_from_string(row.at(st));
        r.pl_db = std::stod(row.at(pl));
        r.ds_s = std::stod(row.at(ds)) * 1e-9;
        r.asa_deg = std::stod(row.at(asa));
        r.asd_deg = std::stod(row.at(asd));
        if (k >= 0 && row.at(k) != "---" && !row.at(k).empty())
            r.k_db = std::stod(row.at(k));
        out.records.push_back(r);
        if (out.has_positions)
            out.positions.emplace_back(std::stod(row.at(x)), std::stod(row.at(y)));
    }
    return out;
}

std::vector<CtfSnapshot> load_snapshots_any(const std::string &path, SoundingConfig &snd,
                                            ArrayGeometry &tx, ArrayGeometry &rx,
                                            std::uint64_t seed)
{
    if (is_scene_file(path))
    {
        SceneFile sc = load_scene(path);
        snd = sc.sounding;
        tx = sc.tx_array.build(sc.sounding);
        rx = sc.rx_array.build(sc.sounding);
        return synthesize_scene(sc, seed);
    }
    RouteFile rt = load_route(path);
    snd = rt.sounding;
    tx = rt.tx_array.build(rt.sounding);
    rx = rt.rx_array.build(rt.sounding);
    return std::move(rt.snapshots);
}

int cmd_synth(const std::string &scene_path, const std::string &out, std::uint64_t seed)
{
    SceneFile sc = load_scene(scene_path);
    RouteFile rt;
    rt.area = sc.area;
    rt.scenario = sc.scenario;
    rt.bs_position = sc.bs_position;
    rt.bs_orientation_deg = sc.bs_orientation_deg;
    rt.sampling_interval_s = sc.sampling_interval_s;
    rt.sounding = sc.sounding;
    rt.tx_array = sc.tx_array;
    rt.rx_array = sc.rx_array;
    rt.snapshots = synthesize_scene(sc, seed);
    save_route(out, rt);
    std::cout << "wrote " << out << " (" << rt.snapshots.size() << " snapshots)\n";
    return 0;
}

int cmd_extract(const std::string &input, const std::string &out, std::uint64_t seed,
                int max_paths, double residual_target)
{
    SoundingConfig snd;
    ArrayGeometry tx, rx;
    std::vector<CtfSnapshot> snaps = load_snapshots_any(input, snd, tx, rx, seed);
    ExtractionConfig ec;
    if (max_paths > 0)
        ec.max_paths = max_paths;
    if (residual_target > 0)
        ec.residual_target = residual_target;
    ExtractionBundle b;
    b.sounding = snd;
    for (const CtfSnapshot &s : snaps)
    {
        ExtractionResult r = extract_mpcs(s, tx, rx, snd, ec);
        b.entries.push_back(
            {s.snapshot_id, s.position, s.d3d_m, s.state, r.residual_power_ratio, r.mpcs});
    }
    write_text_file(out, bundle_to_json(b));
    std::cout << "wrote " << out << " (" << b.entries.size() << " snapshots)\n";
    return 0;
}

int cmd_lsp(const std::string &bundle_path, const std::string &out)
{
    ExtractionBundle b = bundle_from_json(bundle_path);
    LspCsv t;
    t.has_positions = true;
    for (const auto &e : b.entries)
    {
        t.records.push_back(make_lsp_record(e.id, e.d3d_m, e.state, e.mpcs, b.sounding));
        t.positions.push_back(e.position);
    }
    write_text_file(out, lsp_to_csv(t));
    std::cout << "wrote " << out << " (" << t.records.size() << " records)\n";
    return 0;
}

int cmd_plfit(const std::string &lsp_path, const std::string &out, double fc_ghz)
{
    LspCsv t = lsp_from_csv(lsp_path);
    CsvWriter w;
    w.header({"state", "model", "n_or_alpha", "beta_db", "sigma_db"});
    for (PropState st : {PropState::LoS, PropState::NLoS})
    {
        std::vector<PlSample> samples;
        for (const LspRecord &r : t.records)
            if (r.state == st)
                samples.push_back({r.d3d_m, r.pl_db, st});
        if (samples.size() < 2)
            continue;
        PathlossFit ci = fit_ci(samples, fc_ghz * 1e9);
        PathlossFit fi = fit_fi(samples);
        w.row({to_string(st), "CI", format_double(ci.n_or_alpha), "",
               format_double(ci.sigma_db)});
        w.row({to_string(st), "FI", format_double(fi.n_or_alpha), format_double(fi.beta_db),
               format_double(fi.sigma_db)});
    }
    write_text_file(out, w.str());
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_trend(const std::string &lsp_path, const std::string &out, int n_min, double max_width,
              int b, std::uint64_t seed)
{
    LspCsv t = lsp_from_csv(lsp_path);
    RouteDataset route;
    for (std::size_t i = 0; i < t.records.size(); ++i)
        route.snapshots.push_back(
            {t.records[i],
             t.has_positions ? t.positions[i] : Eigen::Vector2d::Zero()});
    BinningConfig bc{n_min, max_width};
    CsvWriter w;
    w.header({"bin_center_m", "count", "median", "ci5", "ci95", "lsp", "state"});
    for (LspKind lsp : {LspKind::DS, LspKind::ASA, LspKind::ASD})
        for (PropState st : {PropState::LoS, PropState::NLoS})
            for (const BinSummary &s : distance_trend(route, lsp, st, bc, seed, b))
            {
                double scale = lsp == LspKind::DS ? 1e9 : 1.0;
                w.row({format_double(s.center_m), std::to_string(s.count),
                       format_double(s.median * scale), format_double(s.ci_low * scale),
                       format_double(s.ci_high * scale), to_string(lsp), to_string(st)});
            }
    write_text_file(out, w.str());
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_spatial(const std::string &lsp_path, const std::string &out, double step_m, int b,
                int block_len, double fc_ghz, std::uint64_t seed)
{
    LspCsv t = lsp_from_csv(lsp_path);
    if (!t.has_positions)
        throw std::invalid_argument("spatial: the LSP CSV must carry x_m,y_m positions");
    CsvWriter w;
    w.header({"lsp", "state", "d_corr_m", "ci_low", "ci_high", "n_fail"});
    for (PropState st : {PropState::LoS, PropState::NLoS})
    {
        std::vector<Eigen::Vector2d> pos;
        std::vector<PlSample> pls;
        std::vector<std::vector<double>> vals(4);
        for (std::size_t i = 0; i < t.records.size(); ++i)
        {
            const LspRecord &r = t.records[i];
            if (r.state != st)
                continue;
            pos.push_back(t.positions[i]);
            pls.push_back({r.d3d_m, r.pl_db, st});
            vals[1].push_back(r.ds_s);
            vals[2].push_back(r.asa_deg);
            vals[3].push_back(r.asd_deg);
        }
        if (pos.size() < 8)
            continue;
        PathlossFit ci = fit_ci(pls, fc_ghz * 1e9);
        for (const PlSample &s : pls)
            vals[0].push_back(s.pl_db - ci.evaluate(s.d3d_m));
        const LspKind kinds[4] = {LspKind::PL, LspKind::DS, LspKind::ASA, LspKind::ASD};
        for (int k = 0; k < 4; ++k)
        {
            try
            {
                SpatialTrace tr = resample_arclength(pos, vals[std::size_t(k)], step_m);
                DecorrEstimate est = block_bootstrap_ci(tr, block_len, b,
                                                        Rng(seed).derive(std::uint64_t(k)).seed());
                w.row({to_string(kinds[k]), to_string(st), format_double(est.d_corr_m),
                       format_double(est.ci_low_m), format_double(est.ci_high_m),
                       std::to_string(est.n_fail)});
            }
            catch (const std::exception &e)
            {
                std::cerr << "spatial: skipped " << to_string(kinds[k]) << "/" << to_string(st)
                          << ": " << e.what() << "\n";
            }
        }
    }
    write_text_file(out, w.str());
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_freqfit(const std::string &anchors_path, const std::string &out)
{
    std::vector<AnchorPoint> anchors = load_anchor_csv(anchors_path);
    std::vector<FreqModel> models;
    for (Scenario sc : {Scenario::UMa, Scenario::UMi})
        for (PropState st : {PropState::LoS, PropState::NLoS})
            for (LspKind lsp : {LspKind::DS, LspKind::ASA, LspKind::ASD})
            {
                std::vector<AnchorPoint> group;
                for (const AnchorPoint &a : anchors)
                    if (a.scenario == sc && a.state == st && a.lsp == lsp)
                        group.push_back(a);
                if (group.empty())
                    continue;
                try
                {
                    models.push_back(fit_freq_model(group));
                }
                catch (const std::invalid_argument &e)
                {
                    std::cerr << "freqfit: " << to_string(sc) << "/" << to_string(st) << "/"
                              << to_string(lsp) << ": " << e.what() << "\n";
                }
            }
    write_text_file(out, models_to_json(models, ""));
    std::cout << "wrote " << out << " (" << models.size() << " models)\n";
    return 0;
}

int cmd_eval(const std::string &scenario, const std::string &state, const std::string &lsp,
             const std::vector<double> &freqs)
{
    Scenario sc = scenario_from_string(scenario);
    PropState st = prop_state_from_string(state);
    LspKind l = lsp_kind_from_string(lsp);
    const Gpp3Model *g = find_3gpp(sc, st, l);
    const FreqModel *tw = find_thiswork(sc, st, l);
    std::cout << "# " << to_string(sc) << "/" << to_string(st) << "/" << to_string(l)
              << (l == LspKind::DS ? " (ns)" : " (deg)") << "\n";
    std::cout << "freq_ghz,3gpp,thiswork\n";
    for (double f : freqs)
    {
        double scale = l == LspKind::DS ? 1e9 : 1.0;
        std::string gv = g ? format_double(eval_3gpp(*g, f) * scale) : "---";
        std::string tv = tw ? format_double(eval_freq_model(*tw, f) * scale) : "---";
        std::cout << format_double(f) << "," << gv << "," << tv << "\n";
    }
    return 0;
}

int cmd_demo_scene(const std::string &out_dir, std::uint64_t seed)
{
    auto scenes = generate_demo_scenes(seed);
    for (const SceneFile &sc : scenes)
    {
        std::string path = out_dir + "/demo_scene_" + sc.area + ".json";
        save_scene(path, sc);
        std::cout << "wrote " << path << " (" << sc.snapshots.size() << " snapshots)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"chanlsp: urban radio channel measurement-to-model toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "master seed recorded in outputs");

    // synth
    auto *synth = app.add_subcommand("synth", "synthesize CTF snapshots from a scene file");
    std::string synth_scene, synth_out = "route.json";
    synth->add_option("--scene", synth_scene, "scene JSON (MPC ground truth)")->required();
    synth->add_option("--out", synth_out, "output route JSON");

    // extract
    auto *extract = app.add_subcommand("extract", "super-resolution component extraction");
    std::string ex_in, ex_out = "extraction.json";
    int ex_max_paths = 0;
    double ex_res_target = 0.0;
    extract->add_option("--input", ex_in, "route or scene file")->required();
    extract->add_option("--out", ex_out, "output extraction bundle JSON");
    extract->add_option("--max-paths", ex_max_paths, "component budget");
    extract->add_option("--residual-target", ex_res_target, "stop at this residual power ratio");

    // lsp
    auto *lsp = app.add_subcommand("lsp", "large-scale parameters from extracted components");
    std::string lsp_in, lsp_out = "lsp_records.csv";
    lsp->add_option("--mpcs", lsp_in, "extraction bundle JSON")->required();
    lsp->add_option("--out", lsp_out, "output CSV");

    // plfit
    auto *plfit = app.add_subcommand("plfit", "CI/FI path-loss fits per state");
    std::string pl_in, pl_out = "plfits.csv";
    double pl_fc = 4.85;
    plfit->add_option("--lsp", pl_in, "LSP records CSV")->required();
    plfit->add_option("--out", pl_out, "output CSV");
    plfit->add_option("--fc-ghz", pl_fc, "carrier frequency for the close-in anchor");

    // trend
    auto *trend = app.add_subcommand("trend", "adaptive distance bins with bootstrap CIs");
    std::string tr_in, tr_out = "trends.csv";
    int tr_nmin = 20, tr_b = 1000;
    double tr_width = 50.0;
    trend->add_option("--lsp", tr_in, "LSP records CSV")->required();
    trend->add_option("--out", tr_out, "output CSV");
    trend->add_option("--n-min", tr_nmin, "minimum samples per bin");
    trend->add_option("--max-width", tr_width, "maximum bin width in meters");
    trend->add_option("--bootstrap", tr_b, "bootstrap replicates");

    // spatial
    auto *spatial = app.add_subcommand("spatial", "decorrelation distances with bootstrap CIs");
    std::string sp_in, sp_out = "spatial.csv";
    double sp_step = 1.0, sp_fc = 4.85;
    int sp_b = 400, sp_block = 0;
    spatial->add_option("--lsp", sp_in, "LSP records CSV with x_m,y_m")->required();
    spatial->add_option("--out", sp_out, "output CSV");
    spatial->add_option("--step", sp_step, "arc-length resampling step in meters");
    spatial->add_option("--bootstrap", sp_b, "bootstrap replicates");
    spatial->add_option("--block-len", sp_block, "block length (0 = automatic)");
    spatial->add_option("--fc-ghz", sp_fc, "carrier for the close-in residual removal");

    // freqfit
    auto *freqfit = app.add_subcommand("freqfit", "constrained robust log-log frequency fits");
    std::string ff_in, ff_out = "freq_models.json";
    freqfit->add_option("--anchors", ff_in, "anchor CSV")->required();
    freqfit->add_option("--out", ff_out, "output model JSON");

    // eval
    auto *eval = app.add_subcommand("eval", "evaluate reference models at given frequencies");
    std::string ev_sc, ev_st, ev_lsp;
    std::vector<double> ev_freqs;
    eval->add_option("--scenario", ev_sc, "uma | umi")->required();
    eval->add_option("--state", ev_st, "los | nlos")->required();
    eval->add_option("--lsp", ev_lsp, "ds | asa | asd")->required();
    eval->add_option("--freq", ev_freqs, "frequencies in GHz")->required();

    // report
    auto *report = app.add_subcommand("report", "full processing pipeline");
    std::string rp_config;
    std::string rp_out;
    report->add_option("--config", rp_config, "pipeline config (TOML)")->required();
    report->add_option("--out", rp_out, "override output directory");

    // demo-scene
    auto *demo = app.add_subcommand("demo-scene", "regenerate the bundled synthetic scenes");
    std::string demo_out = ".";
    demo->add_option("--out", demo_out, "output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (synth->parsed())
            return cmd_synth(synth_scene, synth_out, seed);
        if (extract->parsed())
            return cmd_extract(ex_in, ex_out, seed, ex_max_paths, ex_res_target);
        if (lsp->parsed())
            return cmd_lsp(lsp_in, lsp_out);
        if (plfit->parsed())
            return cmd_plfit(pl_in, pl_out, pl_fc);
        if (trend->parsed())
            return cmd_trend(tr_in, tr_out, tr_nmin, tr_width, tr_b, seed);
        if (spatial->parsed())
            return cmd_spatial(sp_in, sp_out, sp_step, sp_b, sp_block, sp_fc, seed);
        if (freqfit->parsed())
            return cmd_freqfit(ff_in, ff_out);
        if (eval->parsed())
            return cmd_eval(ev_sc, ev_st, ev_lsp, ev_freqs);
        if (report->parsed())
        {
            PipelineConfig cfg = load_pipeline_config(rp_config);
            if (!rp_out.empty())
                cfg.output_dir = rp_out;
            cfg.seed = seed != 1 ? seed : cfg.seed;
            RunReport rr = run_pipeline(cfg);
            std::cout << "report: " << rr.artifacts.size() << " artifacts in " << rr.output_dir
                      << "\n";
            for (const auto &a : rr.artifacts)
                std::cout << "  " << a.name << "  sha256=" << a.sha256.substr(0, 16) << "...\n";
            return 0;
        }
        if (demo->parsed())
            return cmd_demo_scene(demo_out, seed);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const nlohmann::json::exception &e)
    {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
