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

#include "satcoex/config.hpp"

#include "satcoex/csvio.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

namespace
{

using nlohmann::json;

std::string resolve(const std::filesystem::path &base, const std::string &p)
{
    if (p.empty())
        return p;
    std::filesystem::path fp(p);
    if (fp.is_absolute())
        return fp.lexically_normal().string();
    return (base / fp).lexically_normal().string();
}

AntennaConfig parse_antenna(const json &j, const std::filesystem::path &base,
                            const AntennaConfig &defaults)
{
    AntennaConfig a = defaults;
    a.type = j.value("type", a.type);
    a.nx = j.value("nx", a.nx);
    a.ny = j.value("ny", a.ny);
    a.spacing_wavelengths = j.value("spacing_wavelengths", a.spacing_wavelengths);
    if (j.contains("path"))
        a.path = resolve(base, j.at("path").get<std::string>());
    if (a.type != "ura" && a.type != "reflector_cut")
        throw std::invalid_argument("config: antenna type must be ura or reflector_cut");
    if (a.type == "ura" && (a.nx < 1 || a.ny < 1))
        throw std::invalid_argument("config: URA dimensions must be >= 1");
    if (a.type == "reflector_cut" && a.path.empty())
        throw std::invalid_argument("config: reflector_cut antenna needs a path");
    return a;
}

} // namespace

RunConfig load_run_config(const std::string &path)
{
    json j;
    try
    {
        j = json::parse(read_text_file(path));
    }
    catch (const json::exception &e)
    {
        throw std::invalid_argument("config: cannot parse " + path + ": " + e.what());
    }
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    RunConfig c;
    c.scene_path = resolve(base, j.at("scene").get<std::string>());
    c.tle_path = resolve(base, j.at("tle").get<std::string>());

    if (j.contains("area"))
    {
        const json &a = j.at("area");
        c.area_center_lat_deg = a.value("center_lat_deg", c.area_center_lat_deg);
        c.area_center_lon_deg = a.value("center_lon_deg", c.area_center_lon_deg);
        c.area_side_km = a.value("side_km", c.area_side_km);
    }
    if (j.contains("track"))
    {
        const json &t = j.at("track");
        c.track_spacing_km = t.value("spacing_km", c.track_spacing_km);
        c.track_span_hours = t.value("span_hours", c.track_span_hours);
        c.track_max_poses = t.value("max_poses", c.track_max_poses);
        const std::string sel = t.value("pose_select", std::string("all"));
        if (sel == "all")
            c.pose_select = PoseSelect::all;
        else if (sel == "max_elevation")
            c.pose_select = PoseSelect::max_elevation;
        else
            throw std::invalid_argument("config: pose_select must be all or max_elevation");
    }

    c.grid = j.value("grid", c.grid);
    c.frequency_hz = j.value("frequency_ghz", c.frequency_hz / 1e9) * 1e9;
    c.max_bounces = j.value("max_bounces", c.max_bounces);
    c.capture_diameter_m = j.value("capture_diameter_km", c.capture_diameter_m / 1e3) * 1e3;

    if (j.contains("antennas"))
    {
        const json &a = j.at("antennas");
        if (a.contains("bs"))
            c.bs_antenna = parse_antenna(a.at("bs"), base, c.bs_antenna);
        if (a.contains("ue"))
            c.ue_antenna = parse_antenna(a.at("ue"), base, c.ue_antenna);
        if (a.contains("rx"))
            c.rx_antenna = parse_antenna(a.at("rx"), base, c.rx_antenna);
    }

    const json &atm = j.at("atmosphere");
    c.atmosphere_table_path = resolve(base, atm.at("table").get<std::string>());
    if (atm.contains("p_percents"))
        c.p_percents = atm.at("p_percents").get<std::vector<double>>();
    c.scintillation_exponent = atm.value("scintillation_exponent", c.scintillation_exponent);

    if (j.contains("cell"))
    {
        const json &cell = j.at("cell");
        c.bs_x_m = cell.value("bs_x_m", c.bs_x_m);
        c.bs_y_m = cell.value("bs_y_m", c.bs_y_m);
        c.bs_height_m = cell.value("bs_height_m", c.bs_height_m);
        c.r_cell_m = cell.value("r_cell_m", c.r_cell_m);
    }

    if (j.contains("scenarios"))
        c.scenarios = j.at("scenarios").get<std::vector<std::string>>();
    if (j.contains("densities"))
        c.densities = j.at("densities").get<std::vector<double>>();
    c.manhattan_area_km2 = j.value("manhattan_area_km2", c.manhattan_area_km2);
    c.ue_count = j.value("ue_count", c.ue_count);
    c.seed = j.value("seed", c.seed);

    c.ptx_uplink_dbm = j.value("ptx_uplink_dbm", c.ptx_uplink_dbm);
    c.ptx_downlink_dbm = j.value("ptx_downlink_dbm", c.ptx_downlink_dbm);
    c.ptx_offset_db = j.value("ptx_offset_db", c.ptx_offset_db);
    c.downlink_grid_m = j.value("downlink_grid_m", c.downlink_grid_m);

    if (j.contains("thresholds"))
    {
        const json &t = j.at("thresholds");
        c.ne_delta_t_k = t.value("ne_delta_t_k", c.ne_delta_t_k);
        c.bandwidth_hz = t.value("bandwidth_hz", c.bandwidth_hz);
        c.gamma1_dbm = t.value("gamma1_dbm", c.gamma1_dbm);
    }

    c.out_dir = j.value("out_dir", c.out_dir);
    if (j.contains("cache_dir"))
        c.cache_dir = j.at("cache_dir").get<std::string>();

    validate_run_config(c);
    return c;
}

void validate_run_config(const RunConfig &c)
{
    if (!std::filesystem::exists(c.scene_path))
        throw std::invalid_argument("config: scene file missing: " + c.scene_path);
    if (!std::filesystem::exists(c.tle_path))
        throw std::invalid_argument("config: TLE file missing: " + c.tle_path);
    if (!std::filesystem::exists(c.atmosphere_table_path))
        throw std::invalid_argument("config: atmosphere table missing: " +
                                    c.atmosphere_table_path);
    if (c.rx_antenna.type == "reflector_cut" && !std::filesystem::exists(c.rx_antenna.path))
        throw std::invalid_argument("config: rx pattern missing: " + c.rx_antenna.path);
    if (c.grid != "paper" && c.grid != "coarse")
        throw std::invalid_argument("config: grid must be paper or coarse");
    if (c.p_percents.empty())
        throw std::invalid_argument("config: p_percents must be non-empty");
    for (double p : c.p_percents)
        if (p < 0.001 || p > 50.0)
            throw std::invalid_argument("config: p_percents must lie in [0.001, 50]");
    if (c.scintillation_exponent != 2 && c.scintillation_exponent != 3)
        throw std::invalid_argument("config: scintillation_exponent must be 2 or 3");
    static const std::set<std::string> known{"single_ul", "single_dl", "network_ul",
                                             "network_dl"};
    for (const std::string &s : c.scenarios)
        if (!known.count(s))
            throw std::invalid_argument("config: unknown scenario kind: " + s);
    const bool has_network =
        std::any_of(c.scenarios.begin(), c.scenarios.end(),
                    [](const std::string &s) { return s.rfind("network", 0) == 0; });
    if (has_network && c.densities.empty())
        throw std::invalid_argument("config: network scenarios need densities");
    for (double d : c.densities)
        if (d <= 0.0)
            throw std::invalid_argument("config: densities must be positive");
    if (c.track_spacing_km <= 0.0 || c.track_span_hours <= 0.0)
        throw std::invalid_argument("config: track spacing and span must be positive");
    if (c.ue_count < 1)
        throw std::invalid_argument("config: ue_count must be >= 1");
    if (c.frequency_hz <= 0.0)
        throw std::invalid_argument("config: frequency must be positive");
}

std::string run_config_manifest(const RunConfig &c)
{
    std::ostringstream m;
    auto kv = [&m](const std::string &k, const std::string &v) { m << k << '=' << v << '\n'; };
    auto kvd = [&](const std::string &k, double v) { kv(k, fmt_g17(v)); };

    auto file_entry = [&](const std::string &k, const std::string &path) {
        kv(k, path);
        if (!path.empty() && std::filesystem::exists(path))
            kv(k + "_fnv1a64", hex64(fnv1a64(read_text_file(path))));
    };

    kv("manifest_version", "1");
    file_entry("scene", c.scene_path);
    file_entry("tle", c.tle_path);
    file_entry("atmosphere_table", c.atmosphere_table_path);
    kvd("area_center_lat_deg", c.area_center_lat_deg);
    kvd("area_center_lon_deg", c.area_center_lon_deg);
    kvd("area_side_km", c.area_side_km);
    kvd("track_spacing_km", c.track_spacing_km);
    kvd("track_span_hours", c.track_span_hours);
    kv("track_max_poses", std::to_string(c.track_max_poses));
    kv("pose_select", c.pose_select == PoseSelect::all ? "all" : "max_elevation");
    kv("grid", c.grid);
    kvd("frequency_hz", c.frequency_hz);
    kv("max_bounces", std::to_string(c.max_bounces));
    kvd("capture_diameter_m", c.capture_diameter_m);
    auto antenna_entry = [&](const std::string &k, const AntennaConfig &a) {
        if (a.type == "ura")
            kv(k, "ura " + std::to_string(a.nx) + "x" + std::to_string(a.ny) +
                      " spacing=" + fmt_g17(a.spacing_wavelengths));
        else
            file_entry(k + "_cut", a.path);
    };
    antenna_entry("antenna_bs", c.bs_antenna);
    antenna_entry("antenna_ue", c.ue_antenna);
    antenna_entry("antenna_rx", c.rx_antenna);
    {
        std::string ps;
        for (double p : c.p_percents)
            ps += (ps.empty() ? "" : " ") + fmt_g17(p);
        kv("p_percents", ps);
    }
    kv("scintillation_exponent", std::to_string(c.scintillation_exponent));
    kvd("bs_x_m", c.bs_x_m);
    kvd("bs_y_m", c.bs_y_m);
    kvd("bs_height_m", c.bs_height_m);
    kvd("r_cell_m", c.r_cell_m);
    {
        std::string ss;
        for (const std::string &s : c.scenarios)
            ss += (ss.empty() ? "" : " ") + s;
        kv("scenarios", ss);
        std::string ds;
        for (double d : c.densities)
            ds += (ds.empty() ? "" : " ") + fmt_g17(d);
        kv("densities", ds);
    }
    kvd("manhattan_area_km2", c.manhattan_area_km2);
    kv("ue_count", std::to_string(c.ue_count));
    kv("seed", std::to_string(c.seed));
    kvd("ptx_uplink_dbm", c.ptx_uplink_dbm);
    kvd("ptx_downlink_dbm", c.ptx_downlink_dbm);
    kvd("ptx_offset_db", c.ptx_offset_db);
    kvd("downlink_grid_m", c.downlink_grid_m);
    kvd("ne_delta_t_k", c.ne_delta_t_k);
    kvd("bandwidth_hz", c.bandwidth_hz);
    kvd("gamma1_dbm", c.gamma1_dbm);
    return m.str();
}

} // namespace satcoex
