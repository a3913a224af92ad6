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

#include "satcoex/atmosphere.hpp"
#include "satcoex/csvio.hpp"

#include <cmath>
#include <stdexcept>

namespace satcoex
{

AtmosphereTable load_atmosphere_table(const std::string &path)
{
    AtmosphereTable table;
    const auto rows = read_csv(path, "p_percent,a_g_db,a_r_db,a_c_db,a_s_db");
    for (const auto &r : rows)
    {
        if (r.size() != 5)
            throw std::runtime_error(path + ": atmosphere row needs 5 fields");
        AtmosphereRow row;
        row.p_percent = to_double(r[0]);
        row.a_g_db = to_double(r[1]);
        row.a_r_db = to_double(r[2]);
        row.a_c_db = to_double(r[3]);
        row.a_s_db = to_double(r[4]);
        table.rows.push_back(row);
    }
    validate_atmosphere_table(table);
    return table;
}

void validate_atmosphere_table(const AtmosphereTable &table)
{
    if (table.rows.size() < 2)
        throw std::runtime_error("atmosphere table needs >= 2 rows");
    for (size_t i = 0; i < table.rows.size(); i++)
    {
        const auto &r = table.rows[i];
        if (r.a_g_db < 0 || r.a_r_db < 0 || r.a_c_db < 0 || r.a_s_db < 0)
            throw std::runtime_error("atmosphere table: negative attenuation at row " +
                                     std::to_string(i));
        if (i > 0)
        {
            const auto &q = table.rows[i - 1];
            if (r.p_percent <= q.p_percent)
                throw std::runtime_error("atmosphere table: p not strictly increasing at row " +
                                         std::to_string(i));
            if (r.a_g_db > q.a_g_db + 1e-12 || r.a_r_db > q.a_r_db + 1e-12 ||
                r.a_c_db > q.a_c_db + 1e-12 || r.a_s_db > q.a_s_db + 1e-12)
                throw std::runtime_error("atmosphere table: component increases with p at row " +
                                         std::to_string(i));
        }
    }
    if (table.rows.front().p_percent > 0.001 || table.rows.back().p_percent < 50.0)
        throw std::runtime_error("atmosphere table must cover p = 0.001 through p = 50");
}

AtmosphereRow interpolate_components(const AtmosphereTable &table, double p_percent)
{
    const auto &rows = table.rows;
    if (p_percent < rows.front().p_percent - 1e-12 || p_percent > rows.back().p_percent + 1e-12)
        throw std::runtime_error("atmosphere lookup: p out of table range");

    if (p_percent <= rows.front().p_percent)
        return rows.front();
    if (p_percent >= rows.back().p_percent)
        return rows.back();

    size_t hi = 1;
    while (rows[hi].p_percent < p_percent)
        hi++;
    const auto &a = rows[hi - 1];
    const auto &b = rows[hi];
    const double w = (std::log10(p_percent) - std::log10(a.p_percent)) /
                     (std::log10(b.p_percent) - std::log10(a.p_percent));

    AtmosphereRow out;
    out.p_percent = p_percent;
    out.a_g_db = a.a_g_db + w * (b.a_g_db - a.a_g_db);
    out.a_r_db = a.a_r_db + w * (b.a_r_db - a.a_r_db);
    out.a_c_db = a.a_c_db + w * (b.a_c_db - a.a_c_db);
    out.a_s_db = a.a_s_db + w * (b.a_s_db - a.a_s_db);
    return out;
}

double combine_attenuation(double a_g, double a_r, double a_c, double a_s,
                           int scintillation_exponent)
{
    if (scintillation_exponent != 2 && scintillation_exponent != 3)
        throw std::runtime_error("scintillation exponent must be 2 or 3");
    const double rc = a_r + a_c;
    const double s_term = (scintillation_exponent == 3) ? a_s * a_s * a_s : a_s * a_s;
    return a_g + std::sqrt(rc * rc + s_term);
}

double l_atm(const AtmosphereTable &table, double p_percent, int scintillation_exponent)
{
    const AtmosphereRow r = interpolate_components(table, p_percent);
    return combine_attenuation(r.a_g_db, r.a_r_db, r.a_c_db, r.a_s_db, scintillation_exponent);
}

} // namespace satcoex
