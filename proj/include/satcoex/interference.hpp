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

#ifndef SATCOEX_INTERFERENCE_HPP
#define SATCOEX_INTERFERENCE_HPP

#include "satcoex/antenna.hpp"
#include "satcoex/orbit.hpp"
#include "satcoex/raytrace.hpp"
#include "satcoex/scan.hpp"
#include "satcoex/scene.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace satcoex
{

constexpr double default_bs_height_m = 6.0;
constexpr double default_ue_height_m = 1.5;
constexpr double default_ptx_uplink_dbm = 1.0;    // dBm over 200 MHz
constexpr double default_ptx_downlink_dbm = -3.0; // dBm over 200 MHz

struct CellSite
{
    std::string cell_id = "cell1";
    Eigen::Vector3d bs_position{0, 0, default_bs_height_m}; // scene-local, meters
    double r_cell_m = 108.0;
};

enum class TransmitterRole
{
    uplink,  // UE transmits
    downlink // BS transmits
};

struct TransmitterInstance
{
    TransmitterRole role = TransmitterRole::downlink;
    Eigen::Vector3d position{0, 0, 0}; // scene-local
    double p_tx_dbm = default_ptx_downlink_dbm;
    const AntennaPattern *pattern = nullptr;
    Orientation mount; // boresight along the BS-UE line
};

// Density (cells/km^2) to cell radius (m): the tabulated pairs
// {25, 50, 100, 200} -> {108, 74, 52, 36}; other densities fall back to
// 500/sqrt(density), half the inter-site distance of a square grid (about 8
// percent off the tabulated values).
double density_to_radius_m(double cells_per_km2);

struct NetworkScenario
{
    double density_cells_km2 = 25.0;
    double manhattan_area_km2 = 60.0;
    long cell_count = 1500; // N = density x area
    double r_cell_m = 108.0;
};

NetworkScenario make_network_scenario(double density_cells_km2,
                                      double manhattan_area_km2 = 60.0);

struct InterferenceSample
{
    std::string scenario;
    int pose_id = 0;
    int pixel_index = 0;
    double theta_s_deg = 0.0;
    double phi_s_deg = 0.0;
    double theta_g_deg = 0.0;
    double phi_g_deg = 0.0;
    int m_rays = 0;
    bool coupled = false;    // false: no-coupling sentinel, excluded from power
    double power_dbm = 0.0;  // meaningful only if coupled
    Orientation strongest_aoa; // arrival direction of the strongest ray
};

// BS mount orientations toward every LOS point of a 1 m grid at UE height
// within the cell radius (grid point under the BS is skipped, its bearing is
// undefined). Positions returned alongside for diagnostics.
struct DownlinkOrientations
{
    std::vector<Orientation> mounts;
    std::vector<Eigen::Vector3d> targets;
};

DownlinkOrientations downlink_orientation_set(const CellSite &site, const UrbanScene &scene,
                                              double grid_m = 1.0,
                                              double ue_height_m = default_ue_height_m);

// `count` LOS UE positions uniform over the cell disc (seeded rejection
// sampling), mounts pointing UE -> BS.
std::vector<TransmitterInstance> uplink_transmitter_set(
    const CellSite &site, const UrbanScene &scene, int count, uint64_t seed,
    const AntennaPattern *ue_pattern, double p_tx_dbm = default_ptx_uplink_dbm,
    double ue_height_m = default_ue_height_m);

// Linear-domain sum over rays of
// P_TX * G_TX(aod - mount) * G_RX(aoa - scan) / (L_FS L_GL L_BL L_atm).
InterferenceSample evaluate_single(const std::vector<RayPath> &rays,
                                   const TransmitterInstance &tx,
                                   const ScanOrientation &scan,
                                   const AntennaPattern &rx_pattern, double atm_db);

// Network aggregation: adds 10 log10(N) to a coupled sample's power (one
// active transmitter per cell, powers sum over N cells in expectation).
InterferenceSample aggregate(const InterferenceSample &sample,
                             const NetworkScenario &scenario);

// CSV columns: scenario, pose_id, pixel_index, theta_s, phi_s, theta_g,
//              phi_g, m_rays, power_dbm (no-coupling rows leave power empty)
void write_samples_csv(const std::vector<InterferenceSample> &samples,
                       const std::string &path);

enum class ScenarioKind
{
    single_ul,
    single_dl,
    network_ul,
    network_dl
};

std::string scenario_kind_name(ScenarioKind kind);

// Everything a scenario evaluation needs. `rays_for` hides the ray source so
// callers can plug in the cache or a direct trace.
struct ScenarioContext
{
    const UrbanScene *scene = nullptr;
    std::vector<SatellitePose> poses;
    const AntennaPattern *bs_pattern = nullptr;
    const AntennaPattern *ue_pattern = nullptr;
    const AntennaPattern *rx_pattern = nullptr;
    double atm_db = 0.0;
    double ptx_uplink_dbm = default_ptx_uplink_dbm;
    double ptx_downlink_dbm = default_ptx_downlink_dbm;
    double downlink_grid_m = 1.0;
    int ue_count = 100;
    uint64_t seed = 1;
    double manhattan_area_km2 = 60.0;
    std::function<std::vector<RayPath>(const Eigen::Vector3d &, const SatellitePose &)>
        rays_for;
};

// Cartesian evaluation over poses x 30 scan orientations x transmitter
// mounts. Network kinds restrict the mount set to the density's cell radius
// and apply the 10 log10(N) aggregate shift.
std::vector<InterferenceSample> run_scenario(ScenarioKind kind, const CellSite &site,
                                             const ScenarioContext &ctx,
                                             double density_cells_km2 = 0.0);

} // namespace satcoex

#endif
