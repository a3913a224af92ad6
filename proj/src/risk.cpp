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

#include "satcoex/risk.hpp"

#include "satcoex/csvio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace satcoex
{

ThresholdSet derive_thresholds(double ne_delta_t_k, double bandwidth_hz, double gamma1_dbm)
{
    if (ne_delta_t_k <= 0.0 || bandwidth_hz <= 0.0)
        throw std::invalid_argument("derive_thresholds: NEdT and bandwidth must be positive");
    ThresholdSet t;
    t.gamma1_dbm = gamma1_dbm;
    t.ne_delta_t_k = ne_delta_t_k;
    t.bandwidth_hz = bandwidth_hz;
    const double p_nedt_mw = boltzmann_j_per_k * bandwidth_hz * ne_delta_t_k * 1e3;
    t.gamma2_dbm = 10.0 * std::log10(0.01 * p_nedt_mw);
    t.gamma3_dbm = 10.0 * std::log10(0.001 * p_nedt_mw);
    t.gamma4_dbm = 10.0 * std::log10(0.0001 * p_nedt_mw);
    const double gamma1_mw = std::pow(10.0, gamma1_dbm / 10.0);
    t.gamma1_equiv_kelvin = gamma1_mw * 1e-3 / (boltzmann_j_per_k * bandwidth_hz);
    t.gamma1_fraction_of_nedt = t.gamma1_equiv_kelvin / ne_delta_t_k;
    return t;
}

std::vector<CcdfPoint> ccdf(const std::vector<InterferenceSample> &samples)
{
    std::vector<double> powers;
    powers.reserve(samples.size());
    for (const InterferenceSample &s : samples)
        if (s.coupled)
            powers.push_back(s.power_dbm);
    std::sort(powers.begin(), powers.end());

    std::vector<CcdfPoint> out;
    const size_t total = samples.size();
    size_t i = 0;
    while (i < powers.size())
    {
        size_t j = i;
        while (j < powers.size() && powers[j] == powers[i])
            ++j;
        CcdfPoint p;
        p.power_dbm = powers[i];
        p.ccdf_percent = 100.0 * (double)(powers.size() - j) / (double)total;
        out.push_back(p);
        i = j;
    }
    return out;
}

Exceedance exceedance(const std::vector<InterferenceSample> &samples, double threshold_dbm,
                      double harmful_percent)
{
    Exceedance e;
    e.sample_count = samples.size();
    if (samples.empty())
        return e;
    size_t above = 0;
    for (const InterferenceSample &s : samples)
        if (s.coupled && s.power_dbm > threshold_dbm)
            ++above;
    e.percent = 100.0 * (double)above / (double)samples.size();
    e.harmful = e.percent > harmful_percent;
    return e;
}

std::vector<HeatmapCell> position_heatmap(const std::vector<InterferenceSample> &samples,
                                          const std::vector<SatellitePose> &poses,
                                          const ThresholdSet &thresholds)
{
    std::map<int, HeatmapCell> by_pose;
    for (const SatellitePose &pose : poses)
    {
        HeatmapCell c;
        c.pose_id = pose.pose_id;
        c.pose_lat_deg = pose.subsatellite.latitude_deg;
        c.pose_lon_deg = pose.subsatellite.longitude_deg;
        by_pose[pose.pose_id] = c;
    }
    for (const InterferenceSample &s : samples)
    {
        auto it = by_pose.find(s.pose_id);
        if (it == by_pose.end())
            throw std::invalid_argument("position_heatmap: sample for unknown pose");
        if (!s.coupled)
            continue;
        HeatmapCell &c = it->second;
        if (!c.coupled || s.power_dbm > c.max_dbm)
            c.max_dbm = s.power_dbm;
        c.coupled = true;
    }
    const double gammas[4] = {thresholds.gamma1_dbm, thresholds.gamma2_dbm,
                              thresholds.gamma3_dbm, thresholds.gamma4_dbm};
    std::vector<HeatmapCell> out;
    out.reserve(by_pose.size());
    for (auto &kv : by_pose)
    {
        if (kv.second.coupled)
            for (int g = 0; g < 4; ++g)
                kv.second.exceeds[g] = kv.second.max_dbm > gammas[g];
        out.push_back(kv.second);
    }
    return out;
}

std::vector<MisalignmentCell> misalignment_map(const std::vector<InterferenceSample> &samples,
                                               const std::vector<SatellitePose> &poses)
{
    // Strongest coupled sample per pose carries the arrival to compare with
    // its own scan boresight.
    std::map<int, const InterferenceSample *> best;
    for (const InterferenceSample &s : samples)
    {
        if (!s.coupled)
            continue;
        auto it = best.find(s.pose_id);
        if (it == best.end() || s.power_dbm > it->second->power_dbm)
            best[s.pose_id] = &s;
    }
    std::vector<MisalignmentCell> out;
    for (const SatellitePose &pose : poses)
    {
        auto it = best.find(pose.pose_id);
        if (it == best.end())
            continue;
        const InterferenceSample &s = *it->second;
        Eigen::Vector3d scan_dir =
            direction_from_angles(Orientation{s.theta_s_deg, s.phi_s_deg});
        Eigen::Vector3d arrival = direction_from_angles(s.strongest_aoa);
        double c = std::clamp(scan_dir.dot(arrival), -1.0, 1.0);
        MisalignmentCell cell;
        cell.pose_id = pose.pose_id;
        cell.pose_lat_deg = pose.subsatellite.latitude_deg;
        cell.pose_lon_deg = pose.subsatellite.longitude_deg;
        cell.degrees = std::acos(c) * 180.0 / pi_d;
        out.push_back(cell);
    }
    return out;
}

void write_ccdf_csv(const std::vector<CcdfPoint> &curve, const std::string &path)
{
    std::string text = "power_dbm,ccdf_percent\n";
    for (const CcdfPoint &p : curve)
    {
        text += fmt_g17(p.power_dbm);
        text += ',';
        text += fmt_g17(p.ccdf_percent);
        text += '\n';
    }
    atomic_write_file(path, text);
}

void write_heatmap_csv(const std::vector<HeatmapCell> &cells, const std::string &path)
{
    std::string text =
        "pose_id,lat_deg,lon_deg,max_dbm,exceeds_gamma1,exceeds_gamma2,exceeds_gamma3,"
        "exceeds_gamma4\n";
    for (const HeatmapCell &c : cells)
    {
        text += std::to_string(c.pose_id);
        text += ',';
        text += fmt_g17(c.pose_lat_deg);
        text += ',';
        text += fmt_g17(c.pose_lon_deg);
        text += ',';
        text += c.coupled ? fmt_g17(c.max_dbm) : "nan";
        for (int g = 0; g < 4; ++g)
        {
            text += ',';
            text += c.coupled && c.exceeds[g] ? '1' : '0';
        }
        text += '\n';
    }
    atomic_write_file(path, text);
}

void write_misalignment_csv(const std::vector<MisalignmentCell> &cells,
                            const std::string &path)
{
    std::string text = "pose_id,lat_deg,lon_deg,misalignment_deg\n";
    for (const MisalignmentCell &c : cells)
    {
        text += std::to_string(c.pose_id);
        text += ',';
        text += fmt_g17(c.pose_lat_deg);
        text += ',';
        text += fmt_g17(c.pose_lon_deg);
        text += ',';
        text += fmt_g17(c.degrees);
        text += '\n';
    }
    atomic_write_file(path, text);
}

void write_exceedance_csv(const std::vector<ExceedanceRow> &rows, const std::string &path)
{
    std::string text = "scenario,cell,density_cells_km2,p_percent,gamma,gamma_dbm,"
                       "exceed_percent,harmful\n";
    for (const ExceedanceRow &r : rows)
    {
        text += r.scenario;
        text += ',';
        text += r.cell;
        text += ',';
        text += fmt_g17(r.density);
        text += ',';
        text += fmt_g17(r.p_percent);
        text += ',';
        text += r.gamma_name;
        text += ',';
        text += fmt_g17(r.gamma_dbm);
        text += ',';
        text += fmt_g17(r.percent);
        text += ',';
        text += r.harmful ? '1' : '0';
        text += '\n';
    }
    atomic_write_file(path, text);
}

} // namespace satcoex
