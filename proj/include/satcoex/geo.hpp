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

#ifndef SATCOEX_GEO_HPP
#define SATCOEX_GEO_HPP

#include <Eigen/Dense>

namespace satcoex
{

// WGS84 ellipsoid
constexpr double wgs84_a = 6378137.0;
constexpr double wgs84_f = 1.0 / 298.257223563;
constexpr double wgs84_b = wgs84_a * (1.0 - wgs84_f);
constexpr double wgs84_e2 = wgs84_f * (2.0 - wgs84_f);

constexpr double earth_mean_radius_m = 6371008.8;
constexpr double earth_rotation_rate = 7.292115e-5; // rad/s
constexpr double speed_of_light = 299792458.0;      // m/s

constexpr double pi_d = 3.14159265358979323846;

inline double deg2rad(double d) { return d * pi_d / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / pi_d; }

using EcefVector = Eigen::Vector3d;

struct GeodeticPoint
{
    double latitude_deg = 0.0;  // [-90, 90]
    double longitude_deg = 0.0; // [-180, 180]
    double altitude_m = 0.0;
};

// Azimuth/elevation pair. Azimuth from north toward east, elevation from the
// local horizontal plane; both in degrees.
struct Orientation
{
    double theta_deg = 0.0; // azimuth, [-180, 180]
    double phi_deg = 0.0;   // elevation, [-90, 90]
};

// Wraps an angle into [-180, 180).
double wrap180(double angle_deg);

EcefVector geodetic_to_ecef(const GeodeticPoint &p);
GeodeticPoint ecef_to_geodetic(const EcefVector &v);

// Columns are the east, north and up unit vectors in ECEF.
Eigen::Matrix3d enu_basis(double latitude_deg, double longitude_deg);

// Unit vector in a local east-north-up frame for the given azimuth/elevation.
Eigen::Vector3d direction_from_angles(const Orientation &o);
Orientation angles_from_direction(const Eigen::Vector3d &unit_dir);

// Great-circle distance between two subsatellite points on the mean sphere.
double ground_arc_m(const GeodeticPoint &a, const GeodeticPoint &b);

} // namespace satcoex

#endif
