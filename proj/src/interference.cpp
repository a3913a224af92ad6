// SPDX-License-Identifier: Apache-2.0
//
// satcoex - coexistence simulator for mm-wave cellular networks and
// passive weather-satellite sensors
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

#include "satcoex/interference.hpp"

#include "satcoex/csvio.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

namespace
{

// mt19937_64 output mapped to [0, 1) the same way on every platform
// (std::uniform_real_distribution is implementation-defined).
class PortableUniform
{
  public:
    explicit PortableUniform(uint64_t seed) : gen_(seed) {}

    double next()
    {
        return (double)(gen_() >> 11) * (1.0 / 9007199254740992.0);
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace

double density_to_radius_m(double cells_per_km2)
{
    static const double table[][2] = {
        {25.0, 108.0}, {50.0, 74.0}, {100.0, 52.0}, {200.0, 36.0}};
    for (const auto &row : table)
        if (std::abs(cells_per_km2 - row[0]) < 1e-9)
            return row[1];
    if (cells_per_km2 <= 0.0)
        throw std::invalid_argument("density_to_radius_m: density must be positive");
    return 500.0 / std::sqrt(cells_per_km2);
}

NetworkScenario make_network_scenario(double density_cells_km2, double manhattan_area_km2)
{
    NetworkScenario s;
    s.density_cells_km2 = density_cells_km2;
    s.manhattan_area_km2 = manhattan_area_km2;
    s.cell_count = std::lround(density_cells_km2 * manhattan_area_km2);
    s.r_cell_m = density_to_radius_m(density_cells_km2);
    if (s.cell_count < 1)
        throw std::invalid_argument("make_network_scenario: cell count < 1");
    return s;
}

DownlinkOrientations downlink_orientation_set(const CellSite &site, const UrbanScene &scene,
                                              double grid_m, double ue_height_m)
{
    if (grid_m <= 0.0)
        throw std::invalid_argument("downlink_orientation_set: grid_m must be positive");
    DownlinkOrientations out;
    const double r = site.r_cell_m;
    const long half = (long)std::floor(r / grid_m);
    for (long iy = -half; iy <= half; ++iy)
    {
        for (long ix = -half; ix <= half; ++ix)
        {
            if (ix == 0 && iy == 0)
                continue; // bearing undefined under the BS
            const double dx = (double)ix * grid_m;
            const double dy = (double)iy * grid_m;
            if (dx * dx + dy * dy > r * r)
                continue;
            Eigen::Vector3d ue(site.bs_position.x() + dx, site.bs_position.y() + dy,
                               ue_height_m);
            if (ue.x() < scene.ground.x_min || ue.x() > scene.ground.x_max ||
                ue.y() < scene.ground.y_min || ue.y() > scene.ground.y_max)
                continue;
            if (!los_clear(site.bs_position, ue, scene))
                continue;
            Eigen::Vector3d d = (ue - site.bs_position).normalized();
            out.mounts.push_back(angles_from_direction(d));
            out.targets.push_back(ue);
        }
    }
    return out;
}

std::vector<TransmitterInstance> uplink_transmitter_set(
    const CellSite &site, const UrbanScene &scene, int count, uint64_t seed,
    const AntennaPattern *ue_pattern, double p_tx_dbm, double ue_height_m)
{
    if (count <= 0)
        throw std::invalid_argument("uplink_transmitter_set: count must be positive");
    std::vector<TransmitterInstance> out;
    out.reserve((size_t)count);
    PortableUniform rng(seed);
    const long max_attempts = 10000L * count;
    long attempts = 0;
    while ((int)out.size() < count)
    {
        if (++attempts > max_attempts)
        {
            std::ostringstream msg;
            msg << "uplink_transmitter_set: only " << out.size() << " of " << count
                << " LOS positions found in " << max_attempts
                << " draws (r_cell=" << site.r_cell_m << " m)";
            throw std::runtime_error(msg.str());
        }
        const double rad = site.r_cell_m * std::sqrt(rng.next());
        const double ang = 2.0 * pi_d * rng.next();
        Eigen::Vector3d ue(site.bs_position.x() + rad * std::cos(ang),
                           site.bs_position.y() + rad * std::sin(ang), ue_height_m);
        Eigen::Vector3d to_bs = site.bs_position - ue;
        if (to_bs.head<2>().norm() < 1e-6)
            continue;
        if (ue.x() < scene.ground.x_min || ue.x() > scene.ground.x_max ||
            ue.y() < scene.ground.y_min || ue.y() > scene.ground.y_max)
            continue;
        if (!los_clear(ue, site.bs_position, scene))
            continue;
        TransmitterInstance tx;
        tx.role = TransmitterRole::uplink;
        tx.position = ue;
        tx.p_tx_dbm = p_tx_dbm;
        tx.pattern = ue_pattern;
        tx.mount = angles_from_direction(to_bs.normalized());
        out.push_back(tx);
    }
    return out;
}

InterferenceSample evaluate_single(const std::vector<RayPath> &rays,
                                   const TransmitterInstance &tx,
                                   const ScanOrientation &scan,
                                   const AntennaPattern &rx_pattern, double atm_db)
{
    InterferenceSample s;
    s.pixel_index = scan.pixel_index;
    s.theta_s_deg = scan.theta_s_deg;
    s.phi_s_deg = scan.phi_s_deg;
    s.theta_g_deg = tx.mount.theta_deg;
    s.phi_g_deg = tx.mount.phi_deg;
    s.m_rays = (int)rays.size();
    if (rays.empty())
        return s;

    const Orientation scan_mount{scan.theta_s_deg, scan.phi_s_deg};
    double sum_mw = 0.0;
    double best_dbm = 0.0;
    bool have_best = false;
    for (const RayPath &ray : rays)
    {
        const double g_tx = gain_toward(*tx.pattern, tx.mount, ray.aod);
        const double g_rx = gain_toward(rx_pattern, scan_mount, ray.aoa);
        const double p_dbm = tx.p_tx_dbm + g_tx + g_rx - ray.l_fs_db - ray.l_gl_db -
                             ray.l_bl_db - atm_db;
        sum_mw += std::pow(10.0, p_dbm / 10.0);
        if (!have_best || p_dbm > best_dbm)
        {
            best_dbm = p_dbm;
            have_best = true;
            s.strongest_aoa = ray.aoa;
        }
    }
    s.coupled = true;
    s.power_dbm = 10.0 * std::log10(sum_mw);
    return s;
}

InterferenceSample aggregate(const InterferenceSample &sample,
                             const NetworkScenario &scenario)
{
    InterferenceSample out = sample;
    if (out.coupled)
        out.power_dbm += 10.0 * std::log10((double)scenario.cell_count);
    return out;
}

void write_samples_csv(const std::vector<InterferenceSample> &samples,
                       const std::string &path)
{
    std::string text =
        "scenario,pose_id,pixel_index,theta_s,phi_s,theta_g,phi_g,m_rays,power_dbm\n";
    for (const InterferenceSample &s : samples)
    {
        text += s.scenario;
        text += ',';
        text += std::to_string(s.pose_id);
        text += ',';
        text += std::to_string(s.pixel_index);
        text += ',';
        text += fmt_g17(s.theta_s_deg);
        text += ',';
        text += fmt_g17(s.phi_s_deg);
        text += ',';
        text += fmt_g17(s.theta_g_deg);
        text += ',';
        text += fmt_g17(s.phi_g_deg);
        text += ',';
        text += std::to_string(s.m_rays);
        text += ',';
        if (s.coupled)
            text += fmt_g17(s.power_dbm);
        text += '\n';
    }
    atomic_write_file(path, text);
}

std::string scenario_kind_name(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::single_ul:
        return "single_ul";
    case ScenarioKind::single_dl:
        return "single_dl";
    case ScenarioKind::network_ul:
        return "network_ul";
    case ScenarioKind::network_dl:
        return "network_dl";
    }
    throw std::logic_error("scenario_kind_name: bad kind");
}

std::vector<InterferenceSample> run_scenario(ScenarioKind kind, const CellSite &site,
                                             const ScenarioContext &ctx,
                                             double density_cells_km2)
{
    if (!ctx.scene || !ctx.rx_pattern || !ctx.rays_for)
        throw std::invalid_argument("run_scenario: incomplete context");
    const bool network =
        kind == ScenarioKind::network_ul || kind == ScenarioKind::network_dl;
    const bool uplink = kind == ScenarioKind::single_ul || kind == ScenarioKind::network_ul;

    CellSite eval_site = site;
    NetworkScenario net;
    std::string tag = scenario_kind_name(kind);
    if (network)
    {
        net = make_network_scenario(density_cells_km2, ctx.manhattan_area_km2);
        eval_site.r_cell_m = net.r_cell_m;
        std::ostringstream t;
        t << tag << "_d" << density_cells_km2;
        tag = t.str();
    }

    // Transmitter set depends only on the scene and cell geometry, not the pose.
    std::vector<TransmitterInstance> txs;
    if (uplink)
    {
        if (!ctx.ue_pattern)
            throw std::invalid_argument("run_scenario: uplink needs a UE pattern");
        txs = uplink_transmitter_set(eval_site, *ctx.scene, ctx.ue_count, ctx.seed,
                                     ctx.ue_pattern, ctx.ptx_uplink_dbm);
    }
    else
    {
        if (!ctx.bs_pattern)
            throw std::invalid_argument("run_scenario: downlink needs a BS pattern");
        DownlinkOrientations set =
            downlink_orientation_set(eval_site, *ctx.scene, ctx.downlink_grid_m);
        txs.reserve(set.mounts.size());
        for (size_t i = 0; i < set.mounts.size(); ++i)
        {
            TransmitterInstance tx;
            tx.role = TransmitterRole::downlink;
            tx.position = eval_site.bs_position;
            tx.p_tx_dbm = ctx.ptx_downlink_dbm;
            tx.pattern = ctx.bs_pattern;
            tx.mount = set.mounts[i];
            txs.push_back(tx);
        }
    }
    if (txs.empty())
        throw std::runtime_error("run_scenario: no transmitter orientations for " + tag);

    std::vector<InterferenceSample> out;
    out.reserve(ctx.poses.size() * scan_pixel_count * txs.size());
    for (const SatellitePose &pose : ctx.poses)
    {
        std::vector<ScanOrientation> scans = scan_orientations(pose);
        // Uplink: one trace per UE. Downlink: every mount shares the BS trace.
        std::vector<std::vector<RayPath>> ray_sets;
        if (uplink)
        {
            ray_sets.reserve(txs.size());
            for (const TransmitterInstance &tx : txs)
                ray_sets.push_back(ctx.rays_for(tx.position, pose));
        }
        else
        {
            ray_sets.push_back(ctx.rays_for(eval_site.bs_position, pose));
        }
        for (const ScanOrientation &scan : scans)
        {
            for (size_t ti = 0; ti < txs.size(); ++ti)
            {
                const TransmitterInstance &tx = txs[ti];
                const std::vector<RayPath> &rays = uplink ? ray_sets[ti] : ray_sets[0];
                InterferenceSample s =
                    evaluate_single(rays, tx, scan, *ctx.rx_pattern, ctx.atm_db);
                s.scenario = tag;
                s.pose_id = pose.pose_id;
                if (network)
                    s = aggregate(s, net);
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

} // namespace satcoex
