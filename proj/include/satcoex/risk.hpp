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

#ifndef SATCOEX_RISK_HPP
#define SATCOEX_RISK_HPP

#include "satcoex/interference.hpp"

#include <string>
#include <vector>

namespace satcoex
{

constexpr double boltzmann_j_per_k = 1.380649e-23;

struct ThresholdSet
{
    double gamma1_dbm = -136.0; // ITU-R protection constant
    double gamma2_dbm = 0.0;    // 1% of k B NEdT
    double gamma3_dbm = 0.0;    // 0.1%
    double gamma4_dbm = 0.0;    // 0.01%
    double ne_delta_t_k = 0.3;
    double bandwidth_hz = 2.0e8;

    // temperature degradation equivalent to gamma1 and its fraction of NEdT
    double gamma1_equiv_kelvin = 0.0;
    double gamma1_fraction_of_nedt = 0.0;
};

ThresholdSet derive_thresholds(double ne_delta_t_k = 0.3, double bandwidth_hz = 2.0e8,
                               double gamma1_dbm = -136.0);

struct CcdfPoint
{
    double power_dbm = 0.0;
    double ccdf_percent = 0.0; // percent of samples strictly above power_dbm
};

// Right-continuous empirical CCDF over the full time base; no-coupling
// sentinels count in the denominator only.
std::vector<CcdfPoint> ccdf(const std::vector<InterferenceSample> &samples);

struct Exceedance
{
    double percent = 0.0;
    bool harmful = false; // strictly greater than 0.01 percent
    size_t sample_count = 0;
};

Exceedance exceedance(const std::vector<InterferenceSample> &samples, double threshold_dbm,
                      double harmful_percent = 0.01);

struct HeatmapCell
{
    int pose_id = 0;
    double pose_lat_deg = 0.0;
    double pose_lon_deg = 0.0;
    bool coupled = false;
    double max_dbm = 0.0; // meaningful only if coupled
    bool exceeds[4] = {false, false, false, false};
};

std::vector<HeatmapCell> position_heatmap(const std::vector<InterferenceSample> &samples,
                                          const std::vector<SatellitePose> &poses,
                                          const ThresholdSet &thresholds);

struct MisalignmentCell
{
    int pose_id = 0;
    double pose_lat_deg = 0.0;
    double pose_lon_deg = 0.0;
    double degrees = 0.0; // scan boresight vs strongest-ray arrival
};

// Poses without coupled samples are omitted.
std::vector<MisalignmentCell> misalignment_map(const std::vector<InterferenceSample> &samples,
                                               const std::vector<SatellitePose> &poses);

void write_ccdf_csv(const std::vector<CcdfPoint> &curve, const std::string &path);
void write_heatmap_csv(const std::vector<HeatmapCell> &cells, const std::string &path);
void write_misalignment_csv(const std::vector<MisalignmentCell> &cells,
                            const std::string &path);

struct ExceedanceRow
{
    std::string scenario;
    std::string cell;
    double density = 0.0; // 0 for single-device scenarios
    double p_percent = 0.0;
    std::string gamma_name;
    double gamma_dbm = 0.0;
    double percent = 0.0;
    bool harmful = false;
};

void write_exceedance_csv(const std::vector<ExceedanceRow> &rows, const std::string &path);

} // namespace satcoex

#endif
