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

#ifndef SATCOEX_CONFIG_HPP
#define SATCOEX_CONFIG_HPP

#include "satcoex/interference.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace satcoex
{

struct AntennaConfig
{
    std::string type = "ura"; // "ura" or "reflector_cut"
    int nx = 16;
    int ny = 16;
    double spacing_wavelengths = 0.5;
    std::string path; // reflector_cut only
};

enum class PoseSelect
{
    all,
    max_elevation // single pose, highest elevation seen from the scene origin
};

struct RunConfig
{
    std::string scene_path;
    std::string tle_path;

    double area_center_lat_deg = 40.7580;
    double area_center_lon_deg = -73.9855;
    double area_side_km = 2343.0;

    double track_spacing_km = 50.0;
    double track_span_hours = 24.0; // from the TLE epoch
    int track_max_poses = 0;        // 0: no cap
    PoseSelect pose_select = PoseSelect::all;

    std::string grid = "paper"; // "paper" or "coarse"
    double frequency_hz = 23.8e9;
    int max_bounces = 6;
    double capture_diameter_m = 50000.0;

    AntennaConfig bs_antenna;           // 16x16 URA
    AntennaConfig ue_antenna{"ura", 4, 4, 0.5, ""};
    AntennaConfig rx_antenna{"reflector_cut", 0, 0, 0.5, ""};

    std::string atmosphere_table_path;
    std::vector<double> p_percents{50.0, 1.0, 0.01};
    int scintillation_exponent = 3;

    double bs_x_m = 0.0;
    double bs_y_m = 0.0;
    double bs_height_m = default_bs_height_m;
    double r_cell_m = 108.0;

    std::vector<std::string> scenarios{"single_dl"};
    std::vector<double> densities;
    double manhattan_area_km2 = 60.0;
    int ue_count = 100;
    uint64_t seed = 1;

    double ptx_uplink_dbm = default_ptx_uplink_dbm;
    double ptx_downlink_dbm = default_ptx_downlink_dbm;
    double ptx_offset_db = 0.0; // applied to both roles (WRC-19 -6 dB study)
    double downlink_grid_m = 1.0;

    double ne_delta_t_k = 0.3;
    double bandwidth_hz = 2.0e8;
    double gamma1_dbm = -136.0;

    std::string out_dir = "out";
    std::string cache_dir; // defaults to <out_dir>/cache
};

// Paths in the file are resolved relative to the file's directory.
RunConfig load_run_config(const std::string &path);

void validate_run_config(const RunConfig &config);

// Canonical key=value dump; part of the run manifest and the determinism
// story, so no timestamps or machine state.
std::string run_config_manifest(const RunConfig &config);

} // namespace satcoex

#endif
