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

#include "chanlsp/route_io.hpp"

#include "chanlsp/csv.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace chanlsp
{

using nlohmann::json;

namespace
{

double require_number(const json &j, const std::string &key, const std::string &ctx)
{
    if (!j.contains(key) || !j[key].is_number())
        throw std::invalid_argument("schema error: missing numeric field '" + key + "' in " + ctx);
    double v = j[key].get<double>();
    if (!std::isfinite(v))
        throw std::invalid_argument("schema error: non-finite '" + key + "' in " + ctx);
    return v;
}

std::string require_string(const json &j, const std::string &key, const std::string &ctx)
{
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument("schema error: missing string field '" + key + "' in " + ctx);
    return j[key].get<std::string>();
}

Eigen::Vector2d require_vec2(const json &j, const std::string &key, const std::string &ctx)
{
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
        throw std::invalid_argument("schema error: '" + key + "' must be [x, y] in " + ctx);
    return {j[key][0].get<double>(), j[key][1].get<double>()};
}

std::complex<double> parse_complex(const json &j, const std::string &ctx)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("schema error: complex entries are [re, im] (" + ctx + ")");
    double re = j[0].get<double>(), im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument("rejected non-finite complex entry at " + ctx);
    return {re, im};
}

SoundingConfig parse_sounding(const json &j)
{
    if (!j.contains("sounding"))
        throw std::invalid_argument("schema error: missing 'sounding' object");
    const json &s = j["sounding"];
    SoundingConfig c;
    c.center_frequency_hz = require_number(s, "center_frequency_hz", "sounding");
    c.num_tones = int(require_number(s, "num_tones", "sounding"));
    c.tone_spacing_hz = require_number(s, "tone_spacing_hz", "sounding");
    c.bandwidth_hz = require_number(s, "bandwidth_hz", "sounding");
    c.validate();
    return c;
}

json sounding_to_json(const SoundingConfig &c)
{
    return json{{"center_frequency_hz", c.center_frequency_hz},
                {"num_tones", c.num_tones},
                {"tone_spacing_hz", c.tone_spacing_hz},
                {"bandwidth_hz", c.bandwidth_hz}};
}

ArraySpec parse_array(const json &j, const std::string &key)
{
    if (!j.contains(key))
        throw std::invalid_argument("schema error: missing '" + key + "' object");
    const json &a = j[key];
    ArraySpec spec;
    std::string kind = require_string(a, "kind", key);
    if (kind == "ula")
        spec.kind = ArrayKind::Ula;
    else if (kind == "uca")
        spec.kind = ArrayKind::Uca;
    else
        throw std::invalid_argument("schema error: array kind must be 'ula' or 'uca'");
    spec.n = int(require_number(a, "n", key));
    spec.spacing_m = a.value("spacing_m", 0.0);
    spec.radius_m = a.value("radius_m", 0.0);
    spec.orientation_deg = a.value("orientation_deg", 0.0);
    spec.hpbw_deg = require_number(a, "hpbw_deg", key);
    spec.gain_dbi = a.value("gain_dbi", 0.0);
    return spec;
}

json array_to_json(const ArraySpec &s)
{
    json j{{"kind", s.kind == ArrayKind::Ula ? "ula" : "uca"},
           {"n", s.n},
           {"orientation_deg", s.orientation_deg},
           {"hpbw_deg", s.hpbw_deg},
           {"gain_dbi", s.gain_dbi}};
    if (s.kind == ArrayKind::Ula)
        j["spacing_m"] = s.spacing_m;
    else
        j["radius_m"] = s.radius_m;
    return j;
}

} // namespace

ArrayGeometry ArraySpec::build(const SoundingConfig &cfg) const
{
    ElementPattern pat{hpbw_deg, gain_dbi};
    double lambda = cfg.wavelength_m();
    if (kind == ArrayKind::Ula)
    {
        double d = spacing_m > 0.0 ? spacing_m : 0.5 * lambda;
        return make_ula(n, d, deg2rad(orientation_deg), pat);
    }
    double r = radius_m > 0.0 ? radius_m : 0.25 * lambda / std::sin(M_PI / double(n));
    return make_uca(n, r, deg2rad(orientation_deg), pat);
}

RouteFile load_route(const std::string &path)
{
    json j = json::parse(read_text_file(path));
    if (j.value("schema", "") != "chanlsp-route")
        throw std::invalid_argument("schema error: not a chanlsp-route file: " + path);
    RouteFile r;
    r.area = require_string(j, "area", "route");
    r.scenario = scenario_from_string(require_string(j, "scenario", "route"));
    r.bs_position = require_vec2(j, "bs_position", "route");
    r.bs_orientation_deg = j.value("bs_orientation_deg", 0.0);
    r.sampling_interval_s = j.value("sampling_interval_s", 0.5);
    r.sounding = parse_sounding(j);
    r.tx_array = parse_array(j, "tx_array");
    r.rx_array = parse_array(j, "rx_array");

    if (!j.contains("snapshots") || !j["snapshots"].is_array())
        throw std::invalid_argument("schema error: missing 'snapshots' array");
    const int nrx = r.rx_array.n, ntx = r.tx_array.n, ntones = r.sounding.num_tones;
    for (std::size_t si = 0; si < j["snapshots"].size(); ++si)
    {
        const json &s = j["snapshots"][si];
        std::string ctx = "snapshot " + std::to_string(si);
        CtfSnapshot snap;
        snap.snapshot_id = long(require_number(s, "id", ctx));
        snap.position = require_vec2(s, "position", ctx);
        snap.d3d_m = require_number(s, "d3d_m", ctx);
        snap.state = prop_state_from_string(require_string(s, "state", ctx));
        snap.n_rx = nrx;
        snap.n_tx = ntx;
        snap.n_tones = ntones;
        snap.h.resize(ntones, nrx * ntx);
        if (!s.contains("h") || !s["h"].is_array() || int(s["h"].size()) != nrx)
            throw std::invalid_argument("schema error: 'h' must have n_rx rows in " + ctx);
        for (int rx = 0; rx < nrx; ++rx)
        {
            const json &row = s["h"][rx];
            if (!row.is_array() || int(row.size()) != ntx)
                throw std::invalid_argument("schema error: 'h' row " + std::to_string(rx) +
                                            " must have n_tx entries in " + ctx);
            for (int tx = 0; tx < ntx; ++tx)
            {
                const json &tones = row[tx];
                if (!tones.is_array() || int(tones.size()) != ntones)
                    throw std::invalid_argument("schema error: tone vector (rx " +
                                                std::to_string(rx) + ", tx " + std::to_string(tx) +
                                                ") must have num_tones entries in " + ctx);
                for (int t = 0; t < ntones; ++t)
                    snap.at(rx, tx, t) = parse_complex(
                        tones[t], ctx + ", rx " + std::to_string(rx) + ", tx " +
                                      std::to_string(tx) + ", tone " + std::to_string(t));
            }
        }
        if (snap.position != Eigen::Vector2d::Zero() && snap.d3d_m <= 0.0)
            throw std::invalid_argument("schema error: d3d must be positive in " + ctx);
        r.snapshots.push_back(std::move(snap));
    }
    return r;
}

std::string route_to_json(const RouteFile &route)
{
    json j;
    j["schema"] = "chanlsp-route";
    j["area"] = route.area;
    j["scenario"] = to_string(route.scenario);
    j["bs_position"] = {route.bs_position.x(), route.bs_position.y()};
    j["bs_orientation_deg"] = route.bs_orientation_deg;
    j["sampling_interval_s"] = route.sampling_interval_s;
    j["sounding"] = sounding_to_json(route.sounding);
    j["tx_array"] = array_to_json(route.tx_array);
    j["rx_array"] = array_to_json(route.rx_array);
    json snaps = json::array();
    for (const CtfSnapshot &s : route.snapshots)
    {
        json rows = json::array();
        for (int rx = 0; rx < s.n_rx; ++rx)
        {
            json row = json::array();
            for (int tx = 0; tx < s.n_tx; ++tx)
            {
                json tones = json::array();
                for (int t = 0; t < s.n_tones; ++t)
                {
                    const auto &c = s.at(rx, tx, t);
                    tones.push_back({c.real(), c.imag()});
                }
                row.push_back(std::move(tones));
            }
            rows.push_back(std::move(row));
        }
        snaps.push_back(json{{"id", s.snapshot_id},
                             {"position", {s.position.x(), s.position.y()}},
                             {"d3d_m", s.d3d_m},
                             {"state", to_string(s.state)},
                             {"h", std::move(rows)}});
    }
    j["snapshots"] = std::move(snaps);
    return j.dump(1) + "\n";
}

void save_route(const std::string &path, const RouteFile &route)
{
    write_text_file(path, route_to_json(route));
}

SceneFile load_scene(const std::string &path)
{
    json j = json::parse(read_text_file(path));
    if (j.value("schema", "") != "chanlsp-scene")
        throw std::invalid_argument("schema error: not a chanlsp-scene file: " + path);
    SceneFile sc;
    sc.area = require_string(j, "area", "scene");
    sc.scenario = scenario_from_string(require_string(j, "scenario", "scene"));
    sc.bs_position = require_vec2(j, "bs_position", "scene");
    sc.bs_orientation_deg = j.value("bs_orientation_deg", 0.0);
    sc.sampling_interval_s = j.value("sampling_interval_s", 0.5);
    sc.sounding = parse_sounding(j);
    sc.tx_array = parse_array(j, "tx_array");
    sc.rx_array = parse_array(j, "rx_array");
    if (j.contains("snr_db"))
        sc.snr_db = j["snr_db"].get<double>();
    if (!j.contains("snapshots") || !j["snapshots"].is_array())
        throw std::invalid_argument("schema error: missing 'snapshots' array");
    for (std::size_t si = 0; si < j["snapshots"].size(); ++si)
    {
        const json &s = j["snapshots"][si];
        std::string ctx = "scene snapshot " + std::to_string(si);
        SceneSnapshot snap;
        snap.id = long(require_number(s, "id", ctx));
        snap.position = require_vec2(s, "position", ctx);
        snap.d3d_m = require_number(s, "d3d_m", ctx);
        snap.state = prop_state_from_string(require_string(s, "state", ctx));
        if (!s.contains("mpcs") || !s["mpcs"].is_array() || s["mpcs"].empty())
            throw std::invalid_argument("schema error: missing 'mpcs' in " + ctx);
        for (std::size_t mi = 0; mi < s["mpcs"].size(); ++mi)
        {
            const json &m = s["mpcs"][mi];
            std::string mctx = ctx + ", mpc " + std::to_string(mi);
            Mpc p;
            p.gamma = parse_complex(m.contains("gamma") ? m["gamma"] : json(), mctx);
            p.tau_s = require_number(m, "tau_ns", mctx) * 1e-9;
            p.phi_t_rad = deg2rad(require_number(m, "phi_t_deg", mctx));
            p.phi_r_rad = deg2rad(require_number(m, "phi_r_deg", mctx));
            snap.mpcs.push_back(p);
        }
        sc.snapshots.push_back(std::move(snap));
    }
    return sc;
}

std::string scene_to_json(const SceneFile &scene)
{
    json j;
    j["schema"] = "chanlsp-scene";
    j["area"] = scene.area;
    j["scenario"] = to_string(scene.scenario);
    j["bs_position"] = {scene.bs_position.x(), scene.bs_position.y()};
    j["bs_orientation_deg"] = scene.bs_orientation_deg;
    j["sampling_interval_s"] = scene.sampling_interval_s;
    j["sounding"] = sounding_to_json(scene.sounding);
    j["tx_array"] = array_to_json(scene.tx_array);
    j["rx_array"] = array_to_json(scene.rx_array);
    if (scene.snr_db)
        j["snr_db"] = *scene.snr_db;
    json snaps = json::array();
    for (const SceneSnapshot &s : scene.snapshots)
    {
        json mp = json::array();
        for (const Mpc &m : s.mpcs)
            mp.push_back(json{{"gamma", {m.gamma.real(), m.gamma.imag()}},
                              {"tau_ns", m.tau_s * 1e9},
                              {"phi_t_deg", rad2deg(m.phi_t_rad)},
                              {"phi_r_deg", rad2deg(m.phi_r_rad)}});
        snaps.push_back(json{{"id", s.id},
                             {"position", {s.position.x(), s.position.y()}},
                             {"d3d_m", s.d3d_m},
                             {"state", to_string(s.state)},
                             {"mpcs", std::move(mp)}});
    }
    j["snapshots"] = std::move(snaps);
    return j.dump(1) + "\n";
}

void save_scene(const std::string &path, const SceneFile &scene)
{
    write_text_file(path, scene_to_json(scene));
}

bool is_scene_file(const std::string &path)
{
    json j = json::parse(read_text_file(path));
    return j.value("schema", "") == "chanlsp-scene";
}

std::string mpcs_to_json(std::span<const Mpc> mpcs, long snapshot_id, double residual_ratio)
{
    json j;
    j["schema"] = "chanlsp-mpcs";
    j["snapshot_id"] = snapshot_id;
    j["residual_power_ratio"] = residual_ratio;
    json arr = json::array();
    for (const Mpc &m : mpcs)
        arr.push_back(json{{"gamma", {m.gamma.real(), m.gamma.imag()}},
                           {"tau_ns", m.tau_s * 1e9},
                           {"phi_t_deg", rad2deg(m.phi_t_rad)},
                           {"phi_r_deg", rad2deg(m.phi_r_rad)}});
    j["mpcs"] = std::move(arr);
    return j.dump(1) + "\n";
}

std::vector<Mpc> mpcs_from_json(const std::string &text)
{
    json j = json::parse(text);
    if (j.value("schema", "") != "chanlsp-mpcs")
        throw std::invalid_argument("schema error: not a chanlsp-mpcs document");
    std::vector<Mpc> out;
    for (std::size_t i = 0; i < j["mpcs"].size(); ++i)
    {
        const json &m = j["mpcs"][i];
        std::string ctx = "mpc " + std::to_string(i);
        Mpc p;
        p.gamma = parse_complex(m.contains("gamma") ? m["gamma"] : json(), ctx);
        p.tau_s = require_number(m, "tau_ns", ctx) * 1e-9;
        p.phi_t_rad = deg2rad(require_number(m, "phi_t_deg", ctx));
        p.phi_r_rad = deg2rad(require_number(m, "phi_r_deg", ctx));
        out.push_back(p);
    }
    return out;
}

std::vector<AnchorPoint> load_anchor_csv(const std::string &path)
{
    CsvTable t = parse_csv(read_text_file(path));
    int ci_f = t.column_index("freq_ghz");
    int ci_sc = t.column_index("scenario");
    int ci_st = t.column_index("state");
    int ci_l = t.column_index("lsp");
    int ci_v = t.column_index("value");
    int ci_src = t.column_index("source");
    int ci_kind = t.column_index("kind");
    if (ci_f < 0 || ci_sc < 0 || ci_st < 0 || ci_l < 0 || ci_v < 0)
        throw std::invalid_argument("anchor CSV: need columns freq_ghz, scenario, state, lsp, "
                                    "value");
    std::vector<AnchorPoint> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
    {
        const auto &row = t.rows[r];
        AnchorPoint a;
        a.freq_ghz = std::stod(row.at(ci_f));
        a.scenario = scenario_from_string(row.at(ci_sc));
        a.state = prop_state_from_string(row.at(ci_st));
        a.lsp = lsp_kind_from_string(row.at(ci_l));
        a.value = std::stod(row.at(ci_v));
        if (a.lsp == LspKind::DS)
            a.value *= 1e-9; // file carries ns
        if (ci_src >= 0)
            a.source = row.at(ci_src);
        a.is_route = ci_kind >= 0 && row.at(ci_kind) == "route";
        if (a.freq_ghz <= 0.0 || a.value <= 0.0)
            throw std::invalid_argument("anchor CSV: row " + std::to_string(r + 1) +
                                        " has non-positive freq or value");
        out.push_back(std::move(a));
    }
    return out;
}

std::string anchors_to_csv(std::span<const AnchorPoint> anchors)
{
    CsvWriter w;
    w.header({"freq_ghz", "scenario", "state", "lsp", "value", "source", "kind"});
    for (const AnchorPoint &a : anchors)
    {
        double v = a.lsp == LspKind::DS ? a.value * 1e9 : a.value;
        w.row({format_double(a.freq_ghz), to_string(a.scenario), to_string(a.state),
               to_string(a.lsp), format_double(v), a.source,
               a.is_route ? "route" : "literature"});
    }
    return w.str();
}

std::string models_to_json(std::span<const FreqModel> models, const std::string &provenance_json)
{
    json j;
    j["schema"] = "chanlsp-models";
    json arr = json::array();
    for (const FreqModel &m : models)
        arr.push_back(json{{"scenario", to_string(m.scenario)},
                           {"state", to_string(m.state)},
                           {"lsp", to_string(m.lsp)},
                           {"a", m.a},
                           {"b", m.b},
                           {"constraint_active", m.constraint_active},
                           {"n_anchors", m.n_anchors}});
    j["models"] = std::move(arr);
    if (!provenance_json.empty())
        j["provenance"] = json::parse(provenance_json);
    return j.dump(1) + "\n";
}

} // namespace chanlsp
