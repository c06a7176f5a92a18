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

#include "chanlsp/demo_scene.hpp"

#include "chanlsp/pathloss_fit.hpp"
#include "chanlsp/rng.hpp"

#include <algorithm>
#include <cmath>

namespace chanlsp
{

namespace
{

struct AreaPlan
{
    std::string name;
    Scenario scenario = Scenario::UMa;
    ArraySpec bs;
    ArraySpec ms;
    Eigen::Vector2d bs_pos{0.0, 0.0};
    double bs_orientation_deg = 0.0;
    double height_diff_m = 30.3;
    Eigen::Vector2d route_start;
    Eigen::Vector2d route_step;
    int n_points = 40;
    int los_until = 16;        // first indices are line-of-sight
    int stop_at = -1;          // index where the vehicle idles (duplicates)
    double ple_los = 2.2;
    double ple_nlos = 3.0;
    double shadow_los_db = 3.0;
    double shadow_nlos_db = 6.0;
    double shadow_corr_m = 15.0;
    double gamma_base_ns = 120.0; // delay-decay constant near the BS
    double gamma_slope_ns_per_m = 0.8;
};

SceneFile build_area(const AreaPlan &plan, const SoundingConfig &snd, Rng rng)
{
    SceneFile sc;
    sc.area = plan.name;
    sc.scenario = plan.scenario;
    sc.bs_position = plan.bs_pos;
    sc.bs_orientation_deg = plan.bs_orientation_deg;
    sc.sampling_interval_s = 0.5;
    sc.sounding = snd;
    sc.tx_array = plan.bs;
    sc.rx_array = plan.ms;
    sc.snr_db = 35.0;

    // spatially correlated shadow fading along the route (first-order
    // Gauss-Markov over the step distance)
    const double step_len = plan.route_step.norm();
    const double rho = std::exp(-step_len / plan.shadow_corr_m);
    double shadow = rng.normal();

    long id = 0;
    for (int i = 0; i < plan.n_points; ++i)
    {
        int dup = (i == plan.stop_at) ? 4 : 1; // vehicle idles at a signal
        Eigen::Vector2d pos = plan.route_start + double(i) * plan.route_step;
        shadow = rho * shadow + std::sqrt(1.0 - rho * rho) * rng.normal();

        for (int rep = 0; rep < dup; ++rep)
        {
            SceneSnapshot s;
            s.id = id++;
            s.position = pos;
            Eigen::Vector2d d2 = pos - plan.bs_pos;
            s.d3d_m = std::sqrt(d2.squaredNorm() + plan.height_diff_m * plan.height_diff_m);
            bool los = i < plan.los_until;
            s.state = los ? PropState::LoS : PropState::NLoS;

            double ple = los ? plan.ple_los : plan.ple_nlos;
            double sigma = los ? plan.shadow_los_db : plan.shadow_nlos_db;
            double pl_db = fspl_1m_db(snd.center_frequency_hz) +
                           10.0 * ple * std::log10(s.d3d_m) + sigma * shadow;
            double total_pow = std::pow(10.0, -pl_db / 10.0);

            double bearing = std::atan2(d2.y(), d2.x()) - deg2rad(plan.bs_orientation_deg);
            double tau_los = s.d3d_m / speed_of_light;
            double gamma_ns = plan.gamma_base_ns + plan.gamma_slope_ns_per_m * s.d3d_m;

            int n_scat = 6 + int(rng.integer(7)); // 6..12 scattered paths
            std::vector<double> weights;
            std::vector<Mpc> paths;
            double k_lin = los ? std::pow(10.0, rng.uniform(-1.0, 4.0) / 10.0) : 0.0;
            if (los)
            {
                Mpc direct;
                direct.tau_s = tau_los;
                direct.phi_t_rad = wrap_pm_pi(bearing);
                direct.phi_r_rad = wrap_pm_pi(rng.uniform(-M_PI, M_PI));
                paths.push_back(direct);
                weights.push_back(k_lin);
            }
            for (int p = 0; p < n_scat; ++p)
            {
                Mpc m;
                double excess = -gamma_ns * 1e-9 * std::log(std::max(rng.uniform(), 1e-9));
                m.tau_s = tau_los + 5e-9 + excess;
                double spread = los ? 0.25 : 0.6;
                m.phi_t_rad = wrap_pm_pi(bearing + spread * rng.normal());
                if (plan.bs.kind == ArrayKind::Ula)
                    m.phi_t_rad = std::clamp(m.phi_t_rad, deg2rad(-48.0), deg2rad(48.0));
                m.phi_r_rad = wrap_pm_pi(rng.uniform(-M_PI, M_PI));
                paths.push_back(m);
                weights.push_back(std::exp(-excess / (gamma_ns * 1e-9)) *
                                  std::pow(10.0, rng.uniform(-0.3, 0.0)));
            }
            double wsum = 0.0;
            for (double w : weights)
                wsum += w;
            for (std::size_t p = 0; p < paths.size(); ++p)
            {
                double amp = std::sqrt(total_pow * weights[p] / wsum);
                paths[p].gamma = std::polar(amp, rng.uniform(0.0, 2.0 * M_PI));
            }
            s.mpcs = std::move(paths);
            sc.snapshots.push_back(std::move(s));
        }
    }
    return sc;
}

} // namespace

std::vector<SceneFile> generate_demo_scenes(std::uint64_t seed)
{
    Rng rng(seed);

    SoundingConfig snd;
    snd.center_frequency_hz = 4.85001e9;
    snd.num_tones = 128;
    snd.tone_spacing_hz = 780e3;
    snd.bandwidth_hz = 127.0 * 780e3;

    AreaPlan uma;
    uma.name = "SynthUmaA";
    uma.scenario = Scenario::UMa;
    uma.bs = {ArrayKind::Ula, 8, 0.0, 0.0, 0.0, 90.0, 4.0};
    uma.ms = {ArrayKind::Uca, 8, 0.0, 0.0, 0.0, 74.0, 6.5};
    uma.bs_pos = {0.0, 0.0};
    uma.bs_orientation_deg = 0.0;
    uma.height_diff_m = 30.3;
    uma.route_start = {45.0, -22.0};
    uma.route_step = {0.4, 1.6}; // drives past the sector edge near the end
    uma.n_points = 40;
    uma.los_until = 16;
    uma.stop_at = 8;
    uma.ple_los = 2.2;
    uma.ple_nlos = 2.9;
    uma.shadow_los_db = 3.2;
    uma.shadow_nlos_db = 5.5;
    uma.gamma_base_ns = 110.0;
    uma.gamma_slope_ns_per_m = 0.6;

    AreaPlan umi;
    umi.name = "SynthUmiB";
    umi.scenario = Scenario::UMi;
    umi.bs = {ArrayKind::Uca, 8, 0.0, 0.0, 0.0, 74.0, 6.5};
    umi.ms = {ArrayKind::Uca, 8, 0.0, 0.0, 0.0, 74.0, 6.5};
    umi.bs_pos = {0.0, 0.0};
    umi.height_diff_m = 0.3;
    umi.route_start = {18.0, -26.0};
    umi.route_step = {0.9, 1.5};
    umi.n_points = 36;
    umi.los_until = 14;
    umi.stop_at = -1;
    umi.ple_los = 1.9;
    umi.ple_nlos = 2.7;
    umi.shadow_los_db = 4.2;
    umi.shadow_nlos_db = 7.5;
    umi.shadow_corr_m = 25.0;
    umi.gamma_base_ns = 150.0;
    umi.gamma_slope_ns_per_m = 1.2;

    std::vector<SceneFile> scenes;
    scenes.push_back(build_area(uma, snd, rng.derive(1)));
    scenes.push_back(build_area(umi, snd, rng.derive(2)));
    return scenes;
}

} // namespace chanlsp
