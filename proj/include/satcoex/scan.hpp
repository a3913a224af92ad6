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

#ifndef SATCOEX_SCAN_HPP
#define SATCOEX_SCAN_HPP

#include "satcoex/orbit.hpp"

#include <vector>

namespace satcoex
{

// One cross-track step-and-stare sensor orientation. Angles are in the
// satellite's local east-north-up frame: azimuth from north toward east,
// elevation from the local horizontal (negative looks down).
struct ScanOrientation
{
    int pixel_index = 1;          // 1..30
    double theta_s_deg = 0.0;     // [-180, 180]
    double phi_s_deg = 0.0;       // [-90, 90]
    double cross_track_deg = 0.0; // signed angle from nadir in the scan plane
    Eigen::Vector3d boresight_sat{0, 0, -1}; // unit, satellite ENU frame
};

constexpr double scan_half_swath_deg = 48.33;
constexpr int scan_pixel_count = 30;
constexpr double scan_pixel_half_angle_deg = 1.65;

// The 30 orientations from -48.33 to +48.33 degrees across the flight
// direction, endpoints inclusive.
std::vector<ScanOrientation> scan_orientations(const SatellitePose &pose);

// Ground diameter of the scan pixel cone (half-angle 1.65 deg) for a flat
// ground at the pose altitude.
double pixel_ground_diameter_m(const SatellitePose &pose, const ScanOrientation &o);

} // namespace satcoex

#endif
