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

#ifndef SATCOEX_PIPELINE_HPP
#define SATCOEX_PIPELINE_HPP

#include "satcoex/atmosphere.hpp"
#include "satcoex/cache.hpp"
#include "satcoex/config.hpp"
#include "satcoex/interference.hpp"
#include "satcoex/risk.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace satcoex
{

inline constexpr char satcoex_version[] = "1.0.0";

// Everything loaded and derived once per run.
struct PipelineSetup
{
    RunConfig config;
    UrbanScene scene;
    TwoLineElements tle;
    std::vector<SatellitePose> poses;
    AntennaPattern bs_pattern;
    AntennaPattern ue_pattern;
    AntennaPattern rx_pattern;
    AtmosphereTable atmosphere;
    ThresholdSet thresholds;
    LaunchGrid grid;
    CellSite site;
    std::string cache_dir;
};

AntennaPattern make_antenna(const AntennaConfig &config, double frequency_hz);

PipelineSetup prepare_pipeline(const RunConfig &config);

// Fills every ray cache entry the run will need; returns the trace count.
int cmd_trace(const RunConfig &config, std::ostream &log);

// Full run: poses, samples per (scenario, density, p), CCDF / exceedance /
// heatmap / misalignment reports, manifest. Returns 0 on success.
int cmd_run(const RunConfig &config, std::ostream &log);

// Prints findings (invariant violations, antenna deviations) and the run
// manifest; returns the finding count.
int cmd_validate(const RunConfig &config, std::ostream &log);

// Prints the derived threshold table; returns 0.
int cmd_thresholds(double ne_delta_t_k, double bandwidth_hz, double gamma1_dbm,
                   std::ostream &out);

} // namespace satcoex

#endif
