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

#include "satcoex/geo.hpp"

#include <cmath>

namespace satcoex
{

double wrap180(double angle_deg)
{
    double a = std::fmod(angle_deg + 180.0, 360.0);
    if (a < 0.0)
        a += 360.0;
    return a - 180.0;
}

EcefVector geodetic_to_ecef(const GeodeticPoint &p)
{
    const double lat = deg2rad(p.latitude_deg);
    const double lon = deg2rad(p.longitude_deg);
    const double slat = std::sin(lat), clat = std::cos(lat);
    const double n = wgs84_a / std::sqrt(1.0 - wgs84_e2 * slat * slat);
    return EcefVector((n + p.altitude_m) * clat * std::cos(lon),
                      (n + p.altitude_m) * clat * std::sin(lon),
                      (n * (1.0 - wgs84_e2) + p.altitude_m) * slat);
}

GeodeticPoint ecef_to_geodetic(const EcefVector &v)
{
    const double rho = std::hypot(v.x(), v.y());
    GeodeticPoint out;
    out.longitude_deg = rad2deg(std::atan2(v.y(), v.x()));

    double lat = std::atan2(v.z(), rho * (1.0 - wgs84_e2));
    double h = 0.0;
    for (int it = 0; it < 16; it++)
    {
        const double slat = std::sin(lat);
        const double n = wgs84_a / std::sqrt(1.0 - wgs84_e2 * slat * slat);
        h = (rho > 1.0) ? rho / std::cos(lat) - n : std::abs(v.z()) - wgs84_b;
        const double lat_next = std::atan2(v.z(), rho * (1.0 - wgs84_e2 * n / (n + h)));
        if (std::abs(lat_next - lat) < 1e-13)
        {
            lat = lat_next;
            break;
        }
        lat = lat_next;
    }
    const double slat = std::sin(lat);
    const double n = wgs84_a / std::sqrt(1.0 - wgs84_e2 * slat * slat);
    if (rho > 1.0)
        h = rho / std::cos(lat) - n;

    out.latitude_deg = rad2deg(lat);
    out.altitude_m = h;
    return out;
}

Eigen::Matrix3d enu_basis(double latitude_deg, double longitude_deg)
{
    const double lat = deg2rad(latitude_deg);
    const double lon = deg2rad(longitude_deg);
    const double sl = std::sin(lat), cl = std::cos(lat);
    const double so = std::sin(lon), co = std::cos(lon);

    Eigen::Matrix3d m;
    m.col(0) = Eigen::Vector3d(-so, co, 0.0);
    m.col(1) = Eigen::Vector3d(-sl * co, -sl * so, cl);
    m.col(2) = Eigen::Vector3d(cl * co, cl * so, sl);
    return m;
}

Eigen::Vector3d direction_from_angles(const Orientation &o)
{
    const double t = deg2rad(o.theta_deg);
    const double p = deg2rad(o.phi_deg);
    return Eigen::Vector3d(std::sin(t) * std::cos(p), std::cos(t) * std::cos(p), std::sin(p));
}

Orientation angles_from_direction(const Eigen::Vector3d &unit_dir)
{
    Orientation o;
    o.phi_deg = rad2deg(std::asin(std::clamp(unit_dir.z(), -1.0, 1.0)));
    if (std::abs(unit_dir.x()) < 1e-300 && std::abs(unit_dir.y()) < 1e-300)
        o.theta_deg = 0.0;
    else
        o.theta_deg = rad2deg(std::atan2(unit_dir.x(), unit_dir.y()));
    return o;
}

double ground_arc_m(const GeodeticPoint &a, const GeodeticPoint &b)
{
    const double la = deg2rad(a.latitude_deg), lb = deg2rad(b.latitude_deg);
    const double dlat = lb - la;
    const double dlon = deg2rad(b.longitude_deg - a.longitude_deg);
    const double s1 = std::sin(0.5 * dlat), s2 = std::sin(0.5 * dlon);
    const double h = s1 * s1 + std::cos(la) * std::cos(lb) * s2 * s2;
    return 2.0 * earth_mean_radius_m * std::asin(std::min(1.0, std::sqrt(h)));
}

} // namespace satcoex
