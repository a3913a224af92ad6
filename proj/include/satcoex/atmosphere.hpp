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

#ifndef SATCOEX_ATMOSPHERE_HPP
#define SATCOEX_ATMOSPHERE_HPP

#include <string>
#include <vector>

namespace satcoex
{

// Attenuation components versus link unavailability probability p (percent of
// time the attenuation is exceeded). Components are tabulated; the combined
// value is
//
//   L_atm(p) = A_G(p) + sqrt((A_R(p) + A_C(p))^2 + A_S(p)^e)
//
// with e = 3 by default and e = 2 selectable per the standard ITU-R P.618
// combination (the squared-scintillation form). e = 3 is dimensionally odd
// but kept as the default; switch via the scintillation_exponent config.
struct AtmosphereRow
{
    double p_percent = 0.0;
    double a_g_db = 0.0;
    double a_r_db = 0.0;
    double a_c_db = 0.0;
    double a_s_db = 0.0;
};

struct AtmosphereTable
{
    std::vector<AtmosphereRow> rows; // p strictly increasing
};

// CSV columns: p_percent, a_g_db, a_r_db, a_c_db, a_s_db
AtmosphereTable load_atmosphere_table(const std::string &path);

void validate_atmosphere_table(const AtmosphereTable &table);

// Component values at p, interpolated linearly in log10(p) between rows.
AtmosphereRow interpolate_components(const AtmosphereTable &table, double p_percent);

double l_atm(const AtmosphereTable &table, double p_percent, int scintillation_exponent = 3);

// Combination formula alone, without table lookup.
double combine_attenuation(double a_g, double a_r, double a_c, double a_s,
                           int scintillation_exponent = 3);

} // namespace satcoex

#endif
