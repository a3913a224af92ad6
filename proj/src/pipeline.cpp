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

#include "satcoex/pipeline.hpp"

#include "satcoex/csvio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

namespace
{

struct ScenarioInstance
{
    ScenarioKind kind = ScenarioKind::single_dl;
    double density = 0.0; // 0 for single-device
    CellSite site;
    std::string tag;
};

ScenarioKind kind_from_name(const std::string &name)
{
    if (name == "single_ul")
        return ScenarioKind::single_ul;
    if (name == "single_dl")
        return ScenarioKind::single_dl;
    if (name == "network_ul")
        return ScenarioKind::network_ul;
    if (name == "network_dl")
        return ScenarioKind::network_dl;
    throw std::invalid_argument("unknown scenario kind: " + name);
}

std::string compact(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<ScenarioInstance> enumerate_scenarios(const PipelineSetup &s)
{
    std::vector<ScenarioInstance> out;
    for (const std::string &name : s.config.scenarios)
    {
        const ScenarioKind kind = kind_from_name(name);
        const bool network =
            kind == ScenarioKind::network_ul || kind == ScenarioKind::network_dl;
        if (!network)
        {
            ScenarioInstance inst;
            inst.kind = kind;
            inst.site = s.site;
            inst.tag = name;
            out.push_back(inst);
            continue;
        }
        for (double d : s.config.densities)
        {
            ScenarioInstance inst;
            inst.kind = kind;
            inst.density = d;
            inst.site = s.site;
            inst.site.r_cell_m = density_to_radius_m(d);
            inst.tag = name + "_d" + compact(d);
            out.push_back(inst);
        }
    }
    return out;
}

ScenarioContext make_context(const PipelineSetup &s, double atm_db, RayCacheStats *stats)
{
    ScenarioContext ctx;
    ctx.scene = &s.scene;
    ctx.poses = s.poses;
    ctx.bs_pattern = &s.bs_pattern;
    ctx.ue_pattern = &s.ue_pattern;
    ctx.rx_pattern = &s.rx_pattern;
    ctx.atm_db = atm_db;
    ctx.ptx_uplink_dbm = s.config.ptx_uplink_dbm + s.config.ptx_offset_db;
    ctx.ptx_downlink_dbm = s.config.ptx_downlink_dbm + s.config.ptx_offset_db;
    ctx.downlink_grid_m = s.config.downlink_grid_m;
    ctx.ue_count = s.config.ue_count;
    ctx.seed = s.config.seed;
    ctx.manhattan_area_km2 = s.config.manhattan_area_km2;
    const PipelineSetup *sp = &s;
    ctx.rays_for = [sp, stats](const Eigen::Vector3d &tx, const SatellitePose &pose) {
        CaptureSphere cap{pose.position, sp->config.capture_diameter_m};
        return cached_trace(sp->scene, tx, sp->grid, cap, sp->config.frequency_hz,
                            sp->config.max_bounces, sp->cache_dir, stats);
    };
    return ctx;
}

std::string out_path(const PipelineSetup &s, const std::string &name)
{
    return (std::filesystem::path(s.config.out_dir) / name).string();
}

void write_manifest(const PipelineSetup &s)
{
    std::ostringstream m;
    m << "satcoex_version=" << satcoex_version << '\n';
    m << run_config_manifest(s.config);
    m << "out_dir=" << s.config.out_dir << '\n';
    m << "cache_dir=" << s.cache_dir << '\n';
    m << "pose_count=" << s.poses.size() << '\n';
    {
        std::vector<int> counts = per_pass_counts(s.poses, s.config.track_spacing_km * 1e3);
        std::string cs;
        for (int c : counts)
            cs += (cs.empty() ? "" : " ") + std::to_string(c);
        m << "pass_counts=" << cs << '\n';
    }
    atomic_write_file(out_path(s, "manifest.txt"), m.str());
}

} // namespace

AntennaPattern make_antenna(const AntennaConfig &config, double frequency_hz)
{
    if (config.type == "ura")
    {
        UraSpec spec;
        spec.nx = config.nx;
        spec.ny = config.ny;
        spec.element_spacing = config.spacing_wavelengths;
        spec.frequency_hz = frequency_hz;
        return synthesize_ura(spec);
    }
    return load_reflector_pattern(config.path);
}

PipelineSetup prepare_pipeline(const RunConfig &config)
{
    validate_run_config(config);
    PipelineSetup s;
    s.config = config;
    s.scene = load_scene(config.scene_path);
    s.tle = load_tle_file(config.tle_path);

    SpaceStudyArea area;
    area.center = {config.area_center_lat_deg, config.area_center_lon_deg, 0.0};
    area.side_length_m = config.area_side_km * 1e3;
    s.poses = sample_track_in_area(s.tle, area, config.track_spacing_km * 1e3,
                                   config.track_span_hours * 60.0);
    if (s.poses.empty())
        throw std::runtime_error("prepare_pipeline: no track samples inside the study area");

    if (config.pose_select == PoseSelect::max_elevation)
    {
        // Highest elevation of the satellite above the scene origin's horizon.
        size_t best = 0;
        double best_el = -2.0;
        for (size_t i = 0; i < s.poses.size(); ++i)
        {
            Eigen::Vector3d d = (s.poses[i].position - s.scene.origin_ecef).normalized();
            const double el = d.dot(s.scene.enu.col(2));
            if (el > best_el)
            {
                best_el = el;
                best = i;
            }
        }
        s.poses = {s.poses[best]};
    }
    if (config.track_max_poses > 0 && (int)s.poses.size() > config.track_max_poses)
        s.poses.resize((size_t)config.track_max_poses);

    s.bs_pattern = make_antenna(config.bs_antenna, config.frequency_hz);
    s.ue_pattern = make_antenna(config.ue_antenna, config.frequency_hz);
    s.rx_pattern = make_antenna(config.rx_antenna, config.frequency_hz);

    s.atmosphere = load_atmosphere_table(config.atmosphere_table_path);
    s.thresholds = derive_thresholds(config.ne_delta_t_k, config.bandwidth_hz,
                                     config.gamma1_dbm);
    s.grid = config.grid == "paper" ? LaunchGrid::paper() : LaunchGrid::coarse();

    s.site.cell_id = "cell1";
    s.site.bs_position = Eigen::Vector3d(config.bs_x_m, config.bs_y_m, config.bs_height_m);
    s.site.r_cell_m = config.r_cell_m;

    s.cache_dir = config.cache_dir.empty()
                      ? (std::filesystem::path(config.out_dir) / "cache").string()
                      : config.cache_dir;
    return s;
}

int cmd_trace(const RunConfig &config, std::ostream &log)
{
    PipelineSetup s = prepare_pipeline(config);
    RayCacheStats stats;
    for (const ScenarioInstance &inst : enumerate_scenarios(s))
    {
        std::vector<Eigen::Vector3d> tx_positions;
        const bool uplink = inst.kind == ScenarioKind::single_ul ||
                            inst.kind == ScenarioKind::network_ul;
        if (uplink)
        {
            std::vector<TransmitterInstance> txs = uplink_transmitter_set(
                inst.site, s.scene, config.ue_count, config.seed, &s.ue_pattern);
            for (const TransmitterInstance &tx : txs)
                tx_positions.push_back(tx.position);
        }
        else
        {
            tx_positions.push_back(inst.site.bs_position);
        }
        const long before = stats.misses;
        for (const SatellitePose &pose : s.poses)
        {
            CaptureSphere cap{pose.position, config.capture_diameter_m};
            for (const Eigen::Vector3d &tx : tx_positions)
                cached_trace(s.scene, tx, s.grid, cap, config.frequency_hz,
                             config.max_bounces, s.cache_dir, &stats);
        }
        log << "trace " << inst.tag << ": " << tx_positions.size() << " tx x "
            << s.poses.size() << " poses, " << (stats.misses - before) << " traced\n";
    }
    log << "trace done: " << stats.misses << " traced, " << stats.hits << " cache hits\n";
    return (int)stats.misses;
}

int cmd_run(const RunConfig &config, std::ostream &log)
{
    PipelineSetup s = prepare_pipeline(config);
    std::filesystem::create_directories(config.out_dir);
    write_poses_csv(s.poses, out_path(s, "poses.csv"));

    RayCacheStats stats;
    std::vector<ExceedanceRow> exceedance_rows;
    const std::string gamma_names[4] = {"gamma1", "gamma2", "gamma3", "gamma4"};
    const double gamma_values[4] = {s.thresholds.gamma1_dbm, s.thresholds.gamma2_dbm,
                                    s.thresholds.gamma3_dbm, s.thresholds.gamma4_dbm};

    for (const ScenarioInstance &inst : enumerate_scenarios(s))
    {
        for (double p : config.p_percents)
        {
            const double atm_db = l_atm(s.atmosphere, p, config.scintillation_exponent);
            ScenarioContext ctx = make_context(s, atm_db, &stats);
            std::vector<InterferenceSample> samples =
                run_scenario(inst.kind, s.site, ctx, inst.density);
            const std::string suffix = inst.tag + "_p" + compact(p);
            write_samples_csv(samples, out_path(s, "samples_" + suffix + ".csv"));
            write_ccdf_csv(ccdf(samples), out_path(s, "ccdf_" + suffix + ".csv"));
            write_heatmap_csv(position_heatmap(samples, s.poses, s.thresholds),
                              out_path(s, "heatmap_" + suffix + ".csv"));
            write_misalignment_csv(misalignment_map(samples, s.poses),
                                   out_path(s, "misalign_" + suffix + ".csv"));
            for (int g = 0; g < 4; ++g)
            {
                Exceedance e = exceedance(samples, gamma_values[g]);
                ExceedanceRow row;
                row.scenario = scenario_kind_name(inst.kind);
                row.cell = inst.site.cell_id;
                row.density = inst.density;
                row.p_percent = p;
                row.gamma_name = gamma_names[g];
                row.gamma_dbm = gamma_values[g];
                row.percent = e.percent;
                row.harmful = e.harmful;
                exceedance_rows.push_back(row);
            }
            log << "run " << suffix << ": " << samples.size() << " samples, L_atm "
                << atm_db << " dB\n";
        }
    }
    write_exceedance_csv(exceedance_rows, out_path(s, "exceedance.csv"));
    write_manifest(s);
    log << "run done: " << exceedance_rows.size() << " exceedance rows, cache "
        << stats.hits << " hits / " << stats.misses << " misses\n";
    return 0;
}

int cmd_validate(const RunConfig &config, std::ostream &log)
{
    int findings = 0;
    auto check = [&](const std::string &what, const std::function<void()> &fn) {
        try
        {
            fn();
        }
        catch (const std::exception &e)
        {
            ++findings;
            log << "finding: " << what << ": " << e.what() << '\n';
        }
    };

    UrbanScene scene;
    check("scene", [&] { scene = load_scene(config.scene_path); });
    check("tle", [&] { (void)load_tle_file(config.tle_path); });
    check("atmosphere", [&] { (void)load_atmosphere_table(config.atmosphere_table_path); });

    auto check_ura = [&](const char *name, const AntennaConfig &a) {
        if (a.type != "ura")
        {
            check(name, [&] { (void)make_antenna(a, config.frequency_hz); });
            return;
        }
        AntennaPattern p;
        check(name, [&] { p = make_antenna(a, config.frequency_hz); });
        double target = 0.0;
        if (a.nx == 16 && a.ny == 16)
            target = 29.0;
        else if (a.nx == 4 && a.ny == 4)
            target = 17.0;
        if (target != 0.0 && std::abs(p.peak_gain_dbi - target) > 1.0)
        {
            ++findings;
            log << "finding: " << name << ": peak " << p.peak_gain_dbi
                << " dBi deviates more than 1 dB from the " << target << " dBi target\n";
        }
    };
    check_ura("antenna_bs", config.bs_antenna);
    check_ura("antenna_ue", config.ue_antenna);
    check("antenna_rx", [&] { (void)make_antenna(config.rx_antenna, config.frequency_hz); });

    log << "findings: " << findings << '\n';
    log << "--- manifest ---\n";
    log << "satcoex_version=" << satcoex_version << '\n';
    log << run_config_manifest(config);
    return findings;
}

int cmd_thresholds(double ne_delta_t_k, double bandwidth_hz, double gamma1_dbm,
                   std::ostream &out)
{
    ThresholdSet t = derive_thresholds(ne_delta_t_k, bandwidth_hz, gamma1_dbm);
    char line[160];
    std::snprintf(line, sizeof line, "gamma1 %10.4f dBm  (ITU-R protection constant)\n",
                  t.gamma1_dbm);
    out << line;
    std::snprintf(line, sizeof line, "gamma2 %10.4f dBm  (1%% of k B NEdT)\n", t.gamma2_dbm);
    out << line;
    std::snprintf(line, sizeof line, "gamma3 %10.4f dBm  (0.1%% of k B NEdT)\n",
                  t.gamma3_dbm);
    out << line;
    std::snprintf(line, sizeof line, "gamma4 %10.4f dBm  (0.01%% of k B NEdT)\n",
                  t.gamma4_dbm);
    out << line;
    std::snprintf(line, sizeof line, "NEdT %.4f K, bandwidth %.0f Hz\n", t.ne_delta_t_k,
                  t.bandwidth_hz);
    out << line;
    std::snprintf(line, sizeof line,
                  "gamma1 equivalent degradation %.7f K (%.5f of NEdT)\n",
                  t.gamma1_equiv_kelvin, t.gamma1_fraction_of_nedt);
    out << line;
    return 0;
}

} // namespace satcoex
