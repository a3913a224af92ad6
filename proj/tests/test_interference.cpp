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

#include "satcoex/interference.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace satcoex;

namespace
{

UrbanScene open_scene(double half_extent_m = 2000.0)
{
    UrbanScene s;
    s.origin = {0.0, 0.0, 0.0};
    s.ground = {-half_extent_m, -half_extent_m, half_extent_m, half_extent_m};
    finalize_scene(s);
    return s;
}

AntennaPattern flat_pattern()
{
    AntennaPattern p;
    p.storage = AntennaPattern::Storage::symmetric;
    p.step_deg = 0.1;
    p.cut_dbi.assign(1801, 0.0f);
    p.peak_gain_dbi = 0.0;
    return p;
}

SatellitePose pose_overhead(int pose_id)
{
    SatellitePose p;
    p.pose_id = pose_id;
    p.position = geodetic_to_ecef({0.0, 0.0, 870e3});
    p.velocity_direction = Eigen::Vector3d(0, 0, 1); // north at (0, 0)
    p.altitude_m = 870e3;
    p.subsatellite = {0.0, 0.0, 870e3};
    return p;
}

RayPath stub_ray()
{
    RayPath r;
    r.aod = {0.0, 45.0};
    r.aoa = {10.0, -50.0};
    r.bounces = 1;
    r.path_length_m = 900e3;
    r.l_fs_db = friis_loss_db(900e3, 23.8e9);
    r.l_gl_db = 4.7;
    r.l_bl_db = 0.0;
    return r;
}

int disc_grid_point_count(double r)
{
    // integer lattice points with dx^2 + dy^2 <= r^2, center excluded
    int n = 0;
    const long half = (long)std::floor(r);
    for (long iy = -half; iy <= half; ++iy)
        for (long ix = -half; ix <= half; ++ix)
            if ((ix != 0 || iy != 0) && (double)(ix * ix + iy * iy) <= r * r)
                n++;
    return n;
}

} // namespace

TEST_SUITE("interference")
{
    TEST_CASE("density to cell radius")
    {
        CHECK(density_to_radius_m(25.0) == 108.0);
        CHECK(density_to_radius_m(50.0) == 74.0);
        CHECK(density_to_radius_m(100.0) == 52.0);
        CHECK(density_to_radius_m(200.0) == 36.0);
        CHECK(density_to_radius_m(75.0) ==
              doctest::Approx(500.0 / std::sqrt(75.0)).epsilon(1e-12));
        CHECK_THROWS_AS((void)density_to_radius_m(0.0), std::invalid_argument);
        CHECK_THROWS_AS((void)density_to_radius_m(-25.0), std::invalid_argument);
    }

    TEST_CASE("network scenario size")
    {
        NetworkScenario n = make_network_scenario(25.0, 60.0);
        CHECK(n.cell_count == 1500);
        CHECK(n.r_cell_m == 108.0);
        NetworkScenario d = make_network_scenario(200.0, 60.0);
        CHECK(d.cell_count == 12000);
        CHECK(d.r_cell_m == 36.0);
        CHECK_THROWS_AS((void)make_network_scenario(0.001, 60.0), std::invalid_argument);
    }

    TEST_CASE("downlink orientation set covers the LOS disc")
    {
        UrbanScene s = open_scene();
        CellSite site;
        site.bs_position = {0, 0, 6};
        site.r_cell_m = 10.0;
        DownlinkOrientations set = downlink_orientation_set(site, s, 1.0);
        CHECK((int)set.mounts.size() == disc_grid_point_count(10.0));
        REQUIRE(set.mounts.size() == set.targets.size());
        for (size_t i = 0; i < set.mounts.size(); i++)
        {
            CHECK(set.targets[i].z() == 1.5);
            CHECK(set.mounts[i].phi_deg < 0.0); // BS looks down at UE height
            Eigen::Vector3d d = (set.targets[i] - site.bs_position).normalized();
            Orientation o = angles_from_direction(d);
            CHECK(set.mounts[i].theta_deg == doctest::Approx(o.theta_deg).epsilon(1e-12));
            CHECK(set.mounts[i].phi_deg == doctest::Approx(o.phi_deg).epsilon(1e-12));
        }
        CHECK_THROWS_AS((void)downlink_orientation_set(site, s, 0.0),
                        std::invalid_argument);
    }

    TEST_CASE("downlink set respects blockage and ground extent")
    {
        UrbanScene s = open_scene();
        BuildingPrism b;
        b.footprint = {{10, -60}, {30, -60}, {30, 60}, {10, 60}};
        b.height_m = 40.0;
        s.buildings.push_back(b);
        finalize_scene(s);

        CellSite site;
        site.bs_position = {0, 0, 6};
        site.r_cell_m = 20.0;
        DownlinkOrientations set = downlink_orientation_set(site, s, 1.0);
        CHECK((int)set.mounts.size() < disc_grid_point_count(20.0));
        for (const Eigen::Vector3d &t : set.targets)
            CHECK(t.x() < 10.5); // everything behind the facade is shadowed

        UrbanScene tiny = open_scene(8.0);
        DownlinkOrientations clipped = downlink_orientation_set(site, tiny, 1.0);
        for (const Eigen::Vector3d &t : clipped.targets)
        {
            CHECK(std::abs(t.x()) <= 8.0);
            CHECK(std::abs(t.y()) <= 8.0);
        }
        CHECK(clipped.mounts.size() < set.mounts.size() + disc_grid_point_count(20.0));
    }

    TEST_CASE("uplink transmitter set is uniform, LOS and deterministic")
    {
        UrbanScene s = open_scene();
        AntennaPattern ue = flat_pattern();
        CellSite site;
        site.bs_position = {0, 0, 6};
        site.r_cell_m = 100.0;

        std::vector<TransmitterInstance> a =
            uplink_transmitter_set(site, s, 100, 42, &ue, 1.0);
        REQUIRE(a.size() == 100);
        for (const TransmitterInstance &tx : a)
        {
            CHECK(tx.role == TransmitterRole::uplink);
            CHECK(tx.p_tx_dbm == 1.0);
            CHECK(tx.pattern == &ue);
            CHECK(tx.position.z() == 1.5);
            Eigen::Vector2d xy = tx.position.head<2>();
            CHECK(xy.norm() <= 100.0 + 1e-9);
            // mount points back at the BS
            Eigen::Vector3d d = (site.bs_position - tx.position).normalized();
            Eigen::Vector3d m = direction_from_angles(tx.mount);
            CHECK((d - m).norm() < 1e-12);
        }

        std::vector<TransmitterInstance> b =
            uplink_transmitter_set(site, s, 100, 42, &ue, 1.0);
        REQUIRE(b.size() == a.size());
        for (size_t i = 0; i < a.size(); i++)
            CHECK((a[i].position - b[i].position).norm() == 0.0);

        std::vector<TransmitterInstance> c =
            uplink_transmitter_set(site, s, 100, 43, &ue, 1.0);
        CHECK((a[0].position - c[0].position).norm() > 0.0);

        CHECK_THROWS_AS((void)uplink_transmitter_set(site, s, 0, 1, &ue),
                        std::invalid_argument);
    }

    TEST_CASE("uplink sampling reports a hopeless cell")
    {
        // ground patch so small that the draw acceptance rate starves the cap
        UrbanScene s = open_scene(1.0);
        AntennaPattern ue = flat_pattern();
        CellSite site;
        site.bs_position = {0, 0, 6};
        site.r_cell_m = 500.0;
        CHECK_THROWS_AS((void)uplink_transmitter_set(site, s, 100, 1, &ue),
                        std::runtime_error);
    }

    TEST_CASE("single link budget arithmetic")
    {
        AntennaPattern flat = flat_pattern();
        TransmitterInstance tx;
        tx.p_tx_dbm = 1.0;
        tx.pattern = &flat;
        tx.mount = {30.0, -10.0};

        ScanOrientation scan;
        scan.pixel_index = 4;
        scan.theta_s_deg = 12.0;
        scan.phi_s_deg = -80.0;

        RayPath r1;
        r1.aoa = {1.0, -45.0};
        r1.l_fs_db = 100.0;
        r1.l_gl_db = 4.7;
        RayPath r2;
        r2.aoa = {-3.0, -50.0};
        r2.l_fs_db = 110.0;
        r2.l_bl_db = 3.0;

        InterferenceSample s =
            evaluate_single({r1, r2}, tx, scan, flat, 2.5);
        CHECK(s.coupled);
        CHECK(s.m_rays == 2);
        CHECK(s.pixel_index == 4);
        CHECK(s.theta_g_deg == 30.0);
        CHECK(s.phi_g_deg == -10.0);
        const double p1 = 1.0 - 100.0 - 4.7 - 2.5;
        const double p2 = 1.0 - 110.0 - 3.0 - 2.5;
        const double expect =
            10.0 * std::log10(std::pow(10.0, p1 / 10.0) + std::pow(10.0, p2 / 10.0));
        CHECK(std::abs(s.power_dbm - expect) < 1e-9);
        // r1 is the stronger arrival
        CHECK(s.strongest_aoa.theta_deg == 1.0);
        CHECK(s.strongest_aoa.phi_deg == -45.0);
    }

    TEST_CASE("directional gains enter the budget")
    {
        AntennaPattern ura = synthesize_ura({4, 4, 0.5, 0.5, 0.5, 23.8e9});
        AntennaPattern flat = flat_pattern();
        RayPath r = stub_ray();

        TransmitterInstance tx;
        tx.p_tx_dbm = -3.0;
        tx.pattern = &ura;
        tx.mount = r.aod; // boresight on the launch direction

        ScanOrientation scan;
        scan.pixel_index = 1;
        scan.theta_s_deg = r.aoa.theta_deg;
        scan.phi_s_deg = r.aoa.phi_deg;

        InterferenceSample s = evaluate_single({r}, tx, scan, flat, 0.0);
        // pattern grids store float, so boresight matches the peak to ~1e-6 dB
        const double expect = -3.0 + ura.peak_gain_dbi - r.l_fs_db - r.l_gl_db;
        CHECK(std::abs(s.power_dbm - expect) < 1e-4);
    }

    TEST_CASE("no coupling leaves a sentinel")
    {
        AntennaPattern flat = flat_pattern();
        TransmitterInstance tx;
        tx.pattern = &flat;
        tx.mount = {45.0, -5.0};
        ScanOrientation scan;
        scan.pixel_index = 17;
        InterferenceSample s = evaluate_single({}, tx, scan, flat, 1.0);
        CHECK_FALSE(s.coupled);
        CHECK(s.m_rays == 0);
        CHECK(s.power_dbm == 0.0);
        CHECK(s.pixel_index == 17);
        CHECK(s.theta_g_deg == 45.0);
    }

    TEST_CASE("network aggregation adds ten log ten of the cell count")
    {
        NetworkScenario n = make_network_scenario(25.0, 60.0);
        InterferenceSample s;
        s.coupled = true;
        s.power_dbm = -100.0;
        InterferenceSample out = aggregate(s, n);
        CHECK(out.power_dbm ==
              doctest::Approx(-100.0 + 10.0 * std::log10(1500.0)).epsilon(1e-12));

        InterferenceSample sentinel;
        sentinel.coupled = false;
        sentinel.power_dbm = 0.0;
        InterferenceSample kept = aggregate(sentinel, n);
        CHECK_FALSE(kept.coupled);
        CHECK(kept.power_dbm == 0.0);
    }

    TEST_CASE("samples csv leaves sentinel power empty")
    {
        InterferenceSample a;
        a.scenario = "single_dl";
        a.pose_id = 3;
        a.pixel_index = 1;
        a.m_rays = 2;
        a.coupled = true;
        a.power_dbm = -123.5;
        InterferenceSample b = a;
        b.pixel_index = 2;
        b.m_rays = 0;
        b.coupled = false;

        const std::string path =
            (std::filesystem::temp_directory_path() / "satcoex_samples_test.csv").string();
        write_samples_csv({a, b}, path);
        std::ifstream in(path);
        std::string header, row_a, row_b;
        std::getline(in, header);
        std::getline(in, row_a);
        std::getline(in, row_b);
        CHECK(header ==
              "scenario,pose_id,pixel_index,theta_s,phi_s,theta_g,phi_g,m_rays,power_dbm");
        CHECK(row_a.find("-123.5") != std::string::npos);
        CHECK(row_b.back() == ',');
        std::filesystem::remove(path);
    }

    TEST_CASE("scenario names")
    {
        CHECK(scenario_kind_name(ScenarioKind::single_ul) == "single_ul");
        CHECK(scenario_kind_name(ScenarioKind::single_dl) == "single_dl");
        CHECK(scenario_kind_name(ScenarioKind::network_ul) == "network_ul");
        CHECK(scenario_kind_name(ScenarioKind::network_dl) == "network_dl");
    }

    TEST_CASE("scenario evaluation fans out poses, scans and mounts")
    {
        UrbanScene s = open_scene();
        AntennaPattern flat = flat_pattern();
        CellSite site;
        site.bs_position = {0, 0, 6};
        site.r_cell_m = 3.0;

        ScenarioContext ctx;
        ctx.scene = &s;
        ctx.poses = {pose_overhead(7), pose_overhead(8)};
        ctx.bs_pattern = &flat;
        ctx.ue_pattern = &flat;
        ctx.rx_pattern = &flat;
        ctx.downlink_grid_m = 1.0;
        ctx.ue_count = 5;
        RayPath ray = stub_ray();
        ctx.rays_for = [ray](const Eigen::Vector3d &, const SatellitePose &) {
            return std::vector<RayPath>{ray};
        };

        const int mounts = disc_grid_point_count(3.0);
        std::vector<InterferenceSample> dl = run_scenario(ScenarioKind::single_dl, site, ctx);
        REQUIRE((int)dl.size() == 2 * 30 * mounts);
        for (const InterferenceSample &x : dl)
        {
            CHECK(x.scenario == "single_dl");
            CHECK(x.coupled);
            CHECK(x.m_rays == 1);
            CHECK((x.pose_id == 7 || x.pose_id == 8));
        }

        std::vector<InterferenceSample> ul = run_scenario(ScenarioKind::single_ul, site, ctx);
        REQUIRE((int)ul.size() == 2 * 30 * 5);
        CHECK(ul.front().scenario == "single_ul");
    }

    TEST_CASE("network run is the single run shifted by the aggregate term")
    {
        UrbanScene s = open_scene();
        AntennaPattern flat = flat_pattern();
        CellSite site;
        site.bs_position = {0, 0, 6};
        // pick the density whose fallback radius equals this cell radius so
        // the downlink mount sets coincide
        site.r_cell_m = 3.0;
        const double density = (500.0 / 3.0) * (500.0 / 3.0);

        ScenarioContext ctx;
        ctx.scene = &s;
        ctx.poses = {pose_overhead(1)};
        ctx.bs_pattern = &flat;
        ctx.rx_pattern = &flat;
        ctx.downlink_grid_m = 1.0;
        RayPath ray = stub_ray();
        ctx.rays_for = [ray](const Eigen::Vector3d &, const SatellitePose &) {
            return std::vector<RayPath>{ray};
        };

        std::vector<InterferenceSample> single =
            run_scenario(ScenarioKind::single_dl, site, ctx);
        std::vector<InterferenceSample> net =
            run_scenario(ScenarioKind::network_dl, site, ctx, density);
        REQUIRE(net.size() == single.size());

        const long n_cells = std::lround(density * ctx.manhattan_area_km2);
        const double shift = 10.0 * std::log10((double)n_cells);
        for (size_t i = 0; i < single.size(); i++)
        {
            CHECK(net[i].pixel_index == single[i].pixel_index);
            CHECK(net[i].power_dbm ==
                  doctest::Approx(single[i].power_dbm + shift).epsilon(1e-12));
        }
        std::ostringstream tag;
        tag << "network_dl_d" << density;
        CHECK(net.front().scenario == tag.str());
    }

    TEST_CASE("scenario validation")
    {
        UrbanScene s = open_scene();
        AntennaPattern flat = flat_pattern();
        CellSite site;
        site.r_cell_m = 3.0;
        site.bs_position = {0, 0, 6};

        ScenarioContext ctx; // missing everything
        CHECK_THROWS_AS((void)run_scenario(ScenarioKind::single_dl, site, ctx),
                        std::invalid_argument);

        ctx.scene = &s;
        ctx.rx_pattern = &flat;
        ctx.poses = {pose_overhead(1)};
        ctx.rays_for = [](const Eigen::Vector3d &, const SatellitePose &) {
            return std::vector<RayPath>{};
        };
        // downlink without a BS pattern
        CHECK_THROWS_AS((void)run_scenario(ScenarioKind::single_dl, site, ctx),
                        std::invalid_argument);
        // uplink without a UE pattern
        CHECK_THROWS_AS((void)run_scenario(ScenarioKind::single_ul, site, ctx),
                        std::invalid_argument);
        // network without a density
        ctx.bs_pattern = &flat;
        CHECK_THROWS_AS((void)run_scenario(ScenarioKind::network_dl, site, ctx, 0.0),
                        std::invalid_argument);
    }
}
