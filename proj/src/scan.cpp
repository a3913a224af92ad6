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

#include "satcoex/scan.hpp"

#include <cmath>
#include <stdexcept>

namespace satcoex
{

std::vector<ScanOrientation> scan_orientations(const SatellitePose &pose)
{
    const GeodeticPoint gp = ecef_to_geodetic(pose.position);
    const Eigen::Matrix3d enu = enu_basis(gp.latitude_deg, gp.longitude_deg);
    const Eigen::Vector3d up = enu.col(2);

    // horizontal flight direction; the scan plane is perpendicular to it
    Eigen::Vector3d flight =
        pose.velocity_direction - pose.velocity_direction.dot(up) * up;
    const double fnorm = flight.norm();
    if (fnorm < 1e-9)
        throw std::runtime_error("scan: velocity has no horizontal component");
    flight /= fnorm;
    const Eigen::Vector3d cross_axis = flight.cross(up); // right of flight

    std::vector<ScanOrientation> out;
    out.reserve(scan_pixel_count);
    const double step = 2.0 * scan_half_swath_deg / (scan_pixel_count - 1);
    for (int i = 0; i < scan_pixel_count; i++)
    {
        const double alpha = -scan_half_swath_deg + i * step;
        const double a = deg2rad(alpha);
        const Eigen::Vector3d b_ecef = -std::cos(a) * up + std::sin(a) * cross_axis;

        ScanOrientation o;
        o.pixel_index = i + 1;
        o.cross_track_deg = alpha;
        o.boresight_sat = enu.transpose() * b_ecef;
        const Orientation ang = angles_from_direction(o.boresight_sat);
        o.theta_s_deg = ang.theta_deg;
        o.phi_s_deg = ang.phi_deg;
        out.push_back(o);
    }
    return out;
}

double pixel_ground_diameter_m(const SatellitePose &pose, const ScanOrientation &o)
{
    const double beta = std::abs(deg2rad(o.cross_track_deg));
    const double half = deg2rad(scan_pixel_half_angle_deg);
    return pose.altitude_m * (std::tan(beta + half) - std::tan(beta - half));
}

} // namespace satcoex
