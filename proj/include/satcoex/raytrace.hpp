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

#ifndef SATCOEX_RAYTRACE_HPP
#define SATCOEX_RAYTRACE_HPP

#include "satcoex/scene.hpp"

#include <string>
#include <vector>

namespace satcoex
{

struct LaunchGrid
{
    double elevation_step_deg = 0.5;
    double azimuth_step_deg = 0.1;
    double elevation_min_deg = -90.0;
    double elevation_max_deg = 90.0;
    double azimuth_min_deg = -180.0;
    double azimuth_max_deg = 180.0;

    // Paper-granularity full sphere: 0.5 x 0.1 degrees.
    static LaunchGrid paper();
    // Desk-scale grid for tests: 2 x 1 degrees.
    static LaunchGrid coarse();
};

struct RayPath
{
    Orientation aod;               // launch direction, transmitter local frame
    Orientation aoa;               // direction satellite -> source, satellite local frame
    int bounces = 0;               // Q, 0..6
    double path_length_m = 0.0;    // tx through vertices to the sphere center
    double l_fs_db = 0.0;          // Friis free-space loss of path_length
    double l_gl_db = 0.0;          // ground-reflection loss total
    double l_bl_db = 0.0;          // building-reflection loss total
    std::vector<Eigen::Vector3d> vertices; // reflection points, scene-local
};

struct CaptureSphere
{
    EcefVector center{0, 0, 0}; // satellite position, meters
    double diameter_m = 50000.0;
};

double friis_loss_db(double distance_m, double frequency_hz);

// Shoot-and-bounce specular trace from a scene-local transmitter position to
// the capture sphere. Specular reflections off ground, walls and roofs, at
// most `max_bounces`; rays whose escaping segment passes within
// diameter/2 of the sphere center are captured. Within one specular family
// (identical face sequence) only the ray launched closest to the exact
// image-source direction is kept. Result ordered by launch elevation, then
// azimuth.
std::vector<RayPath> trace(const UrbanScene &scene, const Eigen::Vector3d &tx_position,
                           const LaunchGrid &grid, const CaptureSphere &capture,
                           double frequency_hz, int max_bounces = 6);

// CSV columns: aod_theta_deg, aod_phi_deg, aoa_theta_deg, aoa_phi_deg,
//              bounces, path_m, l_fs_db, l_gl_db, l_bl_db
std::string rays_to_csv(const std::vector<RayPath> &rays);
std::vector<RayPath> rays_from_csv(const std::string &content);
void write_rays_csv(const std::vector<RayPath> &rays, const std::string &path);

} // namespace satcoex

#endif
