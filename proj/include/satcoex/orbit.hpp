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

#ifndef SATCOEX_ORBIT_HPP
#define SATCOEX_ORBIT_HPP

#include "satcoex/geo.hpp"
#include "satcoex/sgp4core.hpp"
#include "satcoex/timeutil.hpp"

#include <string>
#include <vector>

namespace satcoex
{

struct TwoLineElements
{
    std::string satnum;
    std::string intl_designator;
    int epoch_year = 2000;       // four digits
    double epoch_days = 1.0;     // fractional day of year
    double jdsatepoch = 0.0;     // derived
    double ndot = 0.0;           // rev/day^2 (first derivative / 2 as printed)
    double nddot = 0.0;          // rev/day^3 (second derivative / 6 as printed)
    double bstar = 0.0;          // 1/earth-radii
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mean_motion_rev_day = 0.0;
    UtcTime epoch;               // derived
};

// Parses a TLE from the two 69-column lines; validates the checksums and the
// element ranges. Throws std::runtime_error on violation.
TwoLineElements parse_tle(const std::string &line1, const std::string &line2);

// Reads the first TLE found in the file (lines starting with '1 ' / '2 ').
TwoLineElements load_tle_file(const std::string &path);

int tle_line_checksum(const std::string &line68);

// Decodes the TLE "assumed decimal point" exponent notation, e.g. " 28098-4"
// -> 0.28098e-4. An all-zero field decodes to 0.
double parse_tle_exp(const std::string &field);

struct SatellitePose
{
    int pose_id = 0;
    UtcTime time;
    EcefVector position{0, 0, 0};           // meters
    Eigen::Vector3d velocity_direction{0, 0, 1}; // unit, ECEF
    double altitude_m = 0.0;                 // geodetic
    GeodeticPoint subsatellite;              // derived convenience
};

struct SpaceStudyArea
{
    GeodeticPoint center;
    double side_length_m = 2343000.0;
};

enum class PropagatorKind
{
    sgp4,      // default
    kepler_j2  // two-body + J2 secular fallback for self-contained tests
};

// Satellite pose at time t. Throws on propagator error (decay, bad elements).
SatellitePose propagate(const TwoLineElements &tle, const UtcTime &t,
                        PropagatorKind kind = PropagatorKind::sgp4);

// TEME state in km / km/s; exposed for validation against reference outputs.
void propagate_teme(const TwoLineElements &tle, double tsince_min, double r_km[3],
                    double v_kms[3], PropagatorKind kind = PropagatorKind::sgp4);

// Poses sampled at `spacing_m` of ground-track arc inside the study area,
// over `span_minutes` starting at the TLE epoch. Pass boundaries are located
// by bisection; within a pass consecutive samples are spacing +- 2 percent.
std::vector<SatellitePose> sample_track_in_area(const TwoLineElements &tle,
                                                const SpaceStudyArea &area,
                                                double spacing_m = 50000.0,
                                                double span_minutes = 29.0 * 1440.0,
                                                PropagatorKind kind = PropagatorKind::sgp4);

// Per-pass pose counts, pass order preserved (diagnostics and acceptance).
std::vector<int> per_pass_counts(const std::vector<SatellitePose> &poses,
                                 double spacing_m);

// True if the subsatellite point projects inside the square study area.
bool in_study_area(const GeodeticPoint &sub, const SpaceStudyArea &area);

// CSV columns: time_iso8601, ecef_x_m, ecef_y_m, ecef_z_m, lat_deg, lon_deg, alt_m
void write_poses_csv(const std::vector<SatellitePose> &poses, const std::string &path);

} // namespace satcoex

#endif
