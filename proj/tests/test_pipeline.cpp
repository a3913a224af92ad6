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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

using namespace satcoex;
namespace fs = std::filesystem;

namespace
{

std::string data_path(const std::string &rel)
{
    return std::string(SATCOEX_DATA_DIR) + "/" + rel;
}

struct TempDir
{
    fs::path path;
    explicit TempDir(const std::string &tag)
    {
        path = fs::temp_directory_path() / ("satcoex_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

// acceptance config trimmed to one scenario and one availability for speed
RunConfig small_config(const TempDir &out, const std::string &cache_dir)
{
    RunConfig c = load_run_config(data_path("configs/acceptance.json"));
    c.scenarios = {"single_dl"};
    c.densities.clear();
    c.p_percents = {50.0};
    c.downlink_grid_m = 25.0;
    c.out_dir = out.str();
    c.cache_dir = cache_dir;
    return c;
}

std::map<std::string, std::string> snapshot_dir(const fs::path &dir)
{
    std::map<std::string, std::string> files;
    for (const auto &e : fs::directory_iterator(dir))
        if (e.is_regular_file())
            files[e.path().filename().string()] = slurp(e.path().string());
    return files;
}

} // namespace

TEST_SUITE("pipeline")
{
    TEST_CASE("run config loads with resolved paths")
    {
        RunConfig c = load_run_config(data_path("configs/acceptance.json"));
        CHECK(fs::exists(c.scene_path));
        CHECK(fs::exists(c.tle_path));
        CHECK(fs::exists(c.atmosphere_table_path));
        CHECK(fs::exists(c.rx_antenna.path));
        CHECK(c.grid == "coarse");
        CHECK(c.pose_select == PoseSelect::max_elevation);
        REQUIRE(c.scenarios.size() == 2);
        CHECK(c.scenarios[0] == "single_dl");
        CHECK(c.scenarios[1] == "network_dl");
        REQUIRE(c.densities.size() == 4);
        CHECK(c.densities[0] == 25.0);
        CHECK(c.densities[3] == 200.0);
        CHECK(c.bs_antenna.nx == 16);
        CHECK(c.ue_antenna.nx == 4);
        CHECK(c.rx_antenna.type == "reflector_cut");
        CHECK(c.seed == 1);
        CHECK(c.r_cell_m == 108.0);
    }

    TEST_CASE("config validation rejects broken setups")
    {
        const RunConfig base = load_run_config(data_path("configs/acceptance.json"));

        RunConfig c = base;
        c.scenarios = {"sideways"};
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.scenarios = {"network_dl"};
        c.densities.clear();
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.densities = {25.0, -1.0};
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.grid = "fine";
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.scene_path += ".missing";
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.p_percents.clear();
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.p_percents = {100.0};
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.scintillation_exponent = 4;
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);

        c = base;
        c.ue_count = 0;
        CHECK_THROWS_AS(validate_run_config(c), std::invalid_argument);
    }

    TEST_CASE("config manifest is canonical and content addressed")
    {
        RunConfig c = load_run_config(data_path("configs/acceptance.json"));
        const std::string m1 = run_config_manifest(c);
        CHECK(m1 == run_config_manifest(c));
        CHECK(m1.find("scene_fnv1a64=") != std::string::npos);
        CHECK(m1.find("tle_fnv1a64=") != std::string::npos);
        CHECK(m1.find("grid=coarse") != std::string::npos);
        CHECK(m1.find("seed=1") != std::string::npos);
        RunConfig c2 = c;
        c2.seed = 2;
        CHECK(run_config_manifest(c2) != m1);
    }

    TEST_CASE("ray cache key separates every trace input")
    {
        UrbanScene scene = load_scene(data_path("scenes/canyon.json"));
        const std::string sig = scene_signature(scene);
        const Eigen::Vector3d tx(0, -40, 6);
        const Eigen::Vector3d cap = scene.local_to_ecef({0, 0, 870e3});
        const LaunchGrid grid = LaunchGrid::coarse();

        const std::string k = ray_cache_key(sig, tx, cap, 50000.0, grid, 23.8e9, 6);
        CHECK(k == ray_cache_key(sig, tx, cap, 50000.0, grid, 23.8e9, 6));
        CHECK(k != ray_cache_key(sig + "x", tx, cap, 50000.0, grid, 23.8e9, 6));
        CHECK(k != ray_cache_key(sig, tx + Eigen::Vector3d(1, 0, 0), cap, 50000.0, grid,
                                 23.8e9, 6));
        CHECK(k != ray_cache_key(sig, tx, cap, 40000.0, grid, 23.8e9, 6));
        CHECK(k != ray_cache_key(sig, tx, cap, 50000.0, LaunchGrid::paper(), 23.8e9, 6));
        CHECK(k != ray_cache_key(sig, tx, cap, 50000.0, grid, 24.0e9, 6));
        CHECK(k != ray_cache_key(sig, tx, cap, 50000.0, grid, 23.8e9, 5));

        const std::string p = ray_cache_path("/some/dir", k);
        CHECK(p.find("/some/dir") == 0);
        CHECK(p.find(k) != std::string::npos);
    }

    TEST_CASE("ray cache round trip, corruption and the trace wrapper")
    {
        TempDir cache("cache_rt");
        UrbanScene scene = load_scene(data_path("scenes/canyon.json"));
        const Eigen::Vector3d tx(0, -40, 6);
        CaptureSphere cap{scene.local_to_ecef({0, 0, 870e3}), 50000.0};
        const LaunchGrid grid = LaunchGrid::coarse();

        RayCacheStats stats;
        std::vector<RayPath> first =
            cached_trace(scene, tx, grid, cap, 23.8e9, 6, cache.str(), &stats);
        CHECK(stats.misses == 1);
        CHECK(stats.hits == 0);
        REQUIRE(!first.empty());

        std::vector<RayPath> second =
            cached_trace(scene, tx, grid, cap, 23.8e9, 6, cache.str(), &stats);
        CHECK(stats.hits == 1);
        CHECK(rays_to_csv(second) == rays_to_csv(first));

        const std::string key = ray_cache_key(scene_signature(scene), tx, cap.center,
                                              cap.diameter_m, grid, 23.8e9, 6);
        const std::string file = ray_cache_path(cache.str(), key);
        REQUIRE(fs::exists(file));
        CHECK(load_cached_rays(cache.str(), key).has_value());
        CHECK_FALSE(load_cached_rays(cache.str(), key + "00").has_value());

        // flip a payload byte: checksum mismatch must read as a miss
        std::string bytes = slurp(file);
        bytes[bytes.size() / 2] = (bytes[bytes.size() / 2] == '1') ? '2' : '1';
        atomic_write_file(file, bytes);
        CHECK_FALSE(load_cached_rays(cache.str(), key).has_value());

        // the wrapper recovers by retracing and rewriting the entry
        std::vector<RayPath> healed =
            cached_trace(scene, tx, grid, cap, 23.8e9, 6, cache.str(), &stats);
        CHECK(stats.misses == 2);
        CHECK(rays_to_csv(healed) == rays_to_csv(first));
        CHECK(load_cached_rays(cache.str(), key).has_value());
    }

    TEST_CASE("pipeline preparation selects the peak-elevation pose")
    {
        TempDir out("prep");
        RunConfig c = small_config(out, "");
        PipelineSetup s = prepare_pipeline(c);
        CHECK(s.poses.size() == 1);
        CHECK(s.site.bs_position.x() == c.bs_x_m);
        CHECK(s.site.bs_position.y() == c.bs_y_m);
        CHECK(s.site.bs_position.z() == c.bs_height_m);
        CHECK(s.site.r_cell_m == 108.0);
        CHECK(s.grid.elevation_step_deg == 2.0); // coarse
        CHECK(s.thresholds.gamma2_dbm == doctest::Approx(-140.8177).epsilon(1e-6));
        // cache dir defaults under the output dir
        CHECK(s.cache_dir == (fs::path(c.out_dir) / "cache").string());
        CHECK(s.rx_pattern.storage == AntennaPattern::Storage::symmetric);

        RunConfig all = c;
        all.pose_select = PoseSelect::all;
        all.track_max_poses = 2;
        PipelineSetup s2 = prepare_pipeline(all);
        CHECK(s2.poses.size() == 2);
    }

    TEST_CASE("thresholds command prints the derivation")
    {
        std::ostringstream out;
        CHECK(cmd_thresholds(0.3, 2.0e8, -136.0, out) == 0);
        const std::string text = out.str();
        CHECK(text.find("gamma1  -136.0000 dBm") != std::string::npos);
        CHECK(text.find("-140.8177") != std::string::npos);
        CHECK(text.find("-150.8177") != std::string::npos);
        CHECK(text.find("-160.8177") != std::string::npos);
        CHECK(text.find("0.0090968") != std::string::npos);
        CHECK(text.find("NEdT 0.3000 K, bandwidth 200000000 Hz") != std::string::npos);
    }

    TEST_CASE("validate command reports findings")
    {
        TempDir out("validate");
        RunConfig c = small_config(out, "");
        std::ostringstream log;
        CHECK(cmd_validate(c, log) == 0);
        CHECK(log.str().find("findings: 0") != std::string::npos);
        CHECK(log.str().find("--- manifest ---") != std::string::npos);

        RunConfig broken = c;
        broken.atmosphere_table_path = c.scene_path; // wrong format on purpose
        std::ostringstream log2;
        CHECK(cmd_validate(broken, log2) > 0);
        CHECK(log2.str().find("finding: atmosphere") != std::string::npos);
    }

    TEST_CASE("trace warms the cache exactly once")
    {
        TempDir out("trace");
        TempDir cache("trace_cache");
        RunConfig c = small_config(out, cache.str());
        std::ostringstream log;
        const int first = cmd_trace(c, log);
        CHECK(first == 1); // one BS trace serves the downlink scenario
        int entries = 0;
        for (const auto &e : fs::directory_iterator(cache.path))
            if (e.path().filename().string().rfind("rays_", 0) == 0)
                ++entries;
        CHECK(entries == first);
        std::ostringstream log2;
        CHECK(cmd_trace(c, log2) == 0);
    }

    TEST_CASE("run emits every report and repeats byte for byte")
    {
        TempDir out("run");
        TempDir cache("run_cache");
        RunConfig c = small_config(out, cache.str());
        std::ostringstream log;
        REQUIRE(cmd_run(c, log) == 0);

        for (const char *name :
             {"poses.csv", "samples_single_dl_p50.csv", "ccdf_single_dl_p50.csv",
              "heatmap_single_dl_p50.csv", "misalign_single_dl_p50.csv", "exceedance.csv",
              "manifest.txt"})
            CHECK(fs::exists(out.path / name));

        const std::string manifest = slurp((out.path / "manifest.txt").string());
        CHECK(manifest.find("satcoex_version=") == 0);
        CHECK(manifest.find("pose_count=1") != std::string::npos);
        CHECK(manifest.find("pass_counts=1") != std::string::npos);

        auto before = snapshot_dir(out.path);
        std::ostringstream log2;
        REQUIRE(cmd_run(c, log2) == 0);
        auto after = snapshot_dir(out.path);
        REQUIRE(before.size() == after.size());
        for (const auto &kv : before)
        {
            REQUIRE(after.count(kv.first) == 1);
            CHECK(after[kv.first] == kv.second);
        }
    }

    TEST_CASE("transmit power offset slides every coupled sample")
    {
        TempDir out_a("offset_a");
        TempDir out_b("offset_b");
        TempDir cache("offset_cache");
        RunConfig a = small_config(out_a, cache.str());
        RunConfig b = small_config(out_b, cache.str());
        b.ptx_offset_db = -6.0;

        std::ostringstream log;
        REQUIRE(cmd_run(a, log) == 0);
        REQUIRE(cmd_run(b, log) == 0);

        const std::string hdr =
            "scenario,pose_id,pixel_index,theta_s,phi_s,theta_g,phi_g,m_rays,power_dbm";
        auto ta = read_csv((out_a.path / "samples_single_dl_p50.csv").string(), hdr);
        auto tb = read_csv((out_b.path / "samples_single_dl_p50.csv").string(), hdr);
        REQUIRE(ta.size() == tb.size());
        REQUIRE(!ta.empty());
        size_t coupled = 0;
        for (size_t i = 0; i < ta.size(); i++)
        {
            const std::string &pa = ta[i][8];
            const std::string &pb = tb[i][8];
            REQUIRE(pa.empty() == pb.empty());
            if (pa.empty())
                continue;
            ++coupled;
            CHECK(std::abs(to_double(pb) - (to_double(pa) - 6.0)) < 1e-9);
        }
        CHECK(coupled > 0);
    }
}
