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
//
// Near-earth SGP4 per the standard reference formulation (WGS72 constants,
// improved operation mode). Deep-space element sets (period >= 225 min) are
// rejected at initialization; the victim satellite and every element set this
// simulator handles are low orbits.

#ifndef SATCOEX_SGP4CORE_HPP
#define SATCOEX_SGP4CORE_HPP

#include <string>

namespace satcoex
{

struct Sgp4GravityConstants
{
    double mu;            // km^3/s^2
    double radiusearthkm; // km
    double xke;           // sqrt(mu) in earth-radii^1.5 / min
    double tumin;         // 1 / xke
    double j2, j3, j4, j3oj2;
};

Sgp4GravityConstants sgp4_wgs72();

struct Sgp4State
{
    // element set at epoch (radians, rad/min, earth radii)
    double ecco = 0.0, inclo = 0.0, nodeo = 0.0, argpo = 0.0, mo = 0.0;
    double no_kozai = 0.0, no_unkozai = 0.0, bstar = 0.0;
    double jdsatepoch = 0.0;

    Sgp4GravityConstants grav;

    // derived constants
    int isimp = 0;
    double aycof = 0, con41 = 0, cc1 = 0, cc4 = 0, cc5 = 0, d2 = 0, d3 = 0, d4 = 0;
    double delmo = 0, eta = 0, argpdot = 0, omgcof = 0, sinmao = 0, t2cof = 0;
    double t3cof = 0, t4cof = 0, t5cof = 0, x1mth2 = 0, x7thm1 = 0, mdot = 0;
    double nodedot = 0, xlcof = 0, xmcof = 0, nodecf = 0;

    int error = 0; // 0 ok; 1 bad eccentricity; 2 bad mean motion;
                   // 4 bad semi-latus; 6 decayed; 10 deep space unsupported
};

// Initializes the propagation constants from mean elements at epoch.
// Angles in radians, mean motion in rad/min, epoch as Julian date (UTC).
Sgp4State sgp4_init(double jdsatepoch, double ecco, double inclo, double nodeo,
                    double argpo, double mo, double no_kozai, double bstar);

// Position (km) and velocity (km/s) in the TEME frame at tsince minutes from
// epoch. Returns false and sets state.error on failure.
bool sgp4_propagate(Sgp4State &state, double tsince_min, double r_km[3], double v_kms[3]);

std::string sgp4_error_message(int error);

} // namespace satcoex

#endif
