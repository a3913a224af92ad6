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

#ifndef SATCOEX_ANTENNA_HPP
#define SATCOEX_ANTENNA_HPP

#include "satcoex/geo.hpp"

#include <string>
#include <vector>

namespace satcoex
{

struct UraSpec
{
    int nx = 4;                    // elements along the horizontal array axis
    int ny = 4;                    // elements along the vertical array axis
    double element_spacing = 0.5;  // wavelengths
    double element_exp_m = 0.5;    // azimuth exponent of the cos^m element
    double element_exp_n = 0.5;    // elevation exponent
    double frequency_hz = 23.8e9;
};

// Gain versus angular offset from the mount direction. Two storage forms:
//
//  * grid      - dense (delta_azimuth, delta_elevation) table at 0.1deg with
//                bilinear interpolation in dB, used for synthesized arrays;
//  * symmetric - principal-plane cut indexed by total off-boresight angle,
//                used for the rotationally symmetric reflector pattern.
//
// Stored gain is floored at peak - 100 dB so interpolation across pattern
// nulls stays finite.
class AntennaPattern
{
  public:
    enum class Storage
    {
        grid,
        symmetric
    };

    Storage storage = Storage::grid;
    double peak_gain_dbi = 0.0;
    double hpbw_azimuth_deg = 0.0;
    double step_deg = 0.1;

    // grid: rows over elevation [-90, 90], columns over azimuth [-180, 180]
    int n_theta = 0;
    int n_phi = 0;
    std::vector<float> grid_dbi;

    // symmetric: off-axis angle [0, 180] at step_deg
    std::vector<float> cut_dbi;

    // Gain at an angular offset (delta azimuth, delta elevation) from the
    // pattern boresight, in dBi.
    double gain_db(double delta_theta_deg, double delta_phi_deg) const;

    double gain_grid_at(int it, int ip) const { return grid_dbi[(size_t)ip * n_theta + it]; }
};

AntennaPattern synthesize_ura(const UraSpec &spec);

// Builds the rotationally symmetric 3D pattern from a principal-plane cut CSV
// (columns: offaxis_deg, gain_dbi). The cut must cover [0, 180] degrees.
AntennaPattern load_reflector_pattern(const std::string &path);

// Gain toward `direction` for a pattern mounted (boresight-steered) at
// `mount`. The offset is taken per axis, azimuth wrapped into [-180, 180].
double gain_toward(const AntennaPattern &pattern, const Orientation &mount,
                   const Orientation &direction);

// Writes a principal-plane cut (elevation 0) of the pattern.
void write_pattern_cut_csv(const AntennaPattern &pattern, const std::string &path);

// Integral of the normalized radiation intensity over the sphere; 4*pi for a
// directivity-consistent pattern.
double pattern_sphere_integral(const AntennaPattern &pattern);

} // namespace satcoex

#endif
