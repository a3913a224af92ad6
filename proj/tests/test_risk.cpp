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

#include "satcoex/risk.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace satcoex;

namespace
{

InterferenceSample coupled_sample(int pose_id, double power_dbm)
{
    InterferenceSample s;
    s.pose_id = pose_id;
    s.coupled = true;
    s.power_dbm = power_dbm;
    return s;
}

InterferenceSample sentinel_sample(int pose_id)
{
    InterferenceSample s;
    s.pose_id = pose_id;
    return s;
}

SatellitePose pose_at(int pose_id, double lat, double lon)
{
    SatellitePose p;
    p.pose_id = pose_id;
    p.subsatellite = {lat, lon, 870e3};
    return p;
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

} // namespace

TEST_SUITE("risk")
{
    TEST_CASE("radiometer threshold chain")
    {
        ThresholdSet t = derive_thresholds(0.3, 2.0e8, -136.0);
        // k B NEdT = 1.380649e-23 * 2e8 * 0.3 W = 8.283894e-13 mW
        CHECK(t.gamma2_dbm == doctest::Approx(-140.8177).epsilon(5e-7));
        CHECK(t.gamma3_dbm == doctest::Approx(-150.8177).epsilon(5e-7));
        CHECK(t.gamma4_dbm == doctest::Approx(-160.8177).epsilon(5e-7));
        // decades apart by construction
        CHECK(t.gamma2_dbm - t.gamma3_dbm == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(t.gamma3_dbm - t.gamma4_dbm == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(t.gamma1_dbm == -136.0);
        CHECK(t.gamma1_dbm > t.gamma2_dbm);
        CHECK(t.gamma2_dbm > t.gamma3_dbm);
        CHECK(t.gamma3_dbm > t.gamma4_dbm);
        // -136 dBm across 200 MHz equals 9.1 mK of brightness temperature
        CHECK(t.gamma1_equiv_kelvin == doctest::Approx(0.0090968).epsilon(1e-4));
        CHECK(std::abs(t.gamma1_equiv_kelvin - 0.0091) < 2e-4);
        CHECK(t.gamma1_fraction_of_nedt ==
              doctest::Approx(t.gamma1_equiv_kelvin / 0.3).epsilon(1e-12));

        // a 6 dB hotter gamma1 scales the equivalent temperature by 10^0.6
        ThresholdSet hot = derive_thresholds(0.3, 2.0e8, -130.0);
        CHECK(hot.gamma1_equiv_kelvin ==
              doctest::Approx(t.gamma1_equiv_kelvin * std::pow(10.0, 0.6)).epsilon(1e-12));

        CHECK_THROWS_AS((void)derive_thresholds(0.0, 2e8), std::invalid_argument);
        CHECK_THROWS_AS((void)derive_thresholds(0.3, -1.0), std::invalid_argument);
    }

    TEST_CASE("ccdf counts strictly above with sentinels in the base")
    {
        std::vector<InterferenceSample> samples = {
            coupled_sample(1, -100.0), coupled_sample(1, -100.0), coupled_sample(1, -90.0),
            coupled_sample(1, -80.0), sentinel_sample(1)};
        std::vector<CcdfPoint> c = ccdf(samples);
        REQUIRE(c.size() == 3);
        CHECK(c[0].power_dbm == -100.0);
        CHECK(c[0].ccdf_percent == doctest::Approx(40.0).epsilon(1e-12));
        CHECK(c[1].power_dbm == -90.0);
        CHECK(c[1].ccdf_percent == doctest::Approx(20.0).epsilon(1e-12));
        CHECK(c[2].power_dbm == -80.0);
        CHECK(c[2].ccdf_percent == 0.0);

        CHECK(ccdf({}).empty());
        CHECK(ccdf({sentinel_sample(1)}).empty());
    }

    TEST_CASE("exceedance strictness and the harmful boundary")
    {
        std::vector<InterferenceSample> samples = {
            coupled_sample(1, -100.0), coupled_sample(1, -100.0), coupled_sample(1, -90.0),
            coupled_sample(1, -80.0), sentinel_sample(1)};
        CHECK(exceedance(samples, -95.0).percent == doctest::Approx(40.0).epsilon(1e-12));
        // equality does not count as exceeding
        CHECK(exceedance(samples, -100.0).percent == doctest::Approx(40.0).epsilon(1e-12));
        CHECK(exceedance(samples, -101.0).percent == doctest::Approx(80.0).epsilon(1e-12));
        CHECK(exceedance(samples, -70.0).percent == 0.0);

        Exceedance empty = exceedance({}, -100.0);
        CHECK(empty.percent == 0.0);
        CHECK_FALSE(empty.harmful);
        CHECK(empty.sample_count == 0);

        // exactly 0.01 percent is not harmful; anything above is
        std::vector<InterferenceSample> boundary(9999, sentinel_sample(1));
        boundary.push_back(coupled_sample(1, -40.0));
        Exceedance at = exceedance(boundary, -50.0);
        CHECK(at.percent == doctest::Approx(0.01).epsilon(1e-12));
        CHECK_FALSE(at.harmful);
        boundary.push_back(coupled_sample(1, -40.0));
        Exceedance above = exceedance(boundary, -50.0);
        CHECK(above.percent > 0.01);
        CHECK(above.harmful);
    }

    TEST_CASE("exceedance is non-increasing in the threshold")
    {
        std::vector<InterferenceSample> samples;
        for (int i = 0; i < 50; i++)
            samples.push_back(coupled_sample(1, -160.0 + 1.7 * i));
        double last = 100.0;
        for (double g = -170.0; g <= -60.0; g += 2.5)
        {
            double p = exceedance(samples, g).percent;
            CHECK(p <= last);
            last = p;
        }
    }

    TEST_CASE("a uniform power shift slides the curve rigidly")
    {
        std::vector<InterferenceSample> orig;
        for (int i = 0; i < 40; i++)
            orig.push_back(coupled_sample(1, -150.0 + 2.3 * i));
        orig.push_back(sentinel_sample(1));
        std::vector<InterferenceSample> shifted = orig;
        for (InterferenceSample &s : shifted)
            if (s.coupled)
                s.power_dbm -= 6.0;

        for (double g = -155.0; g <= -60.0; g += 3.7)
            CHECK(exceedance(shifted, g - 6.0).percent ==
                  exceedance(orig, g).percent);

        std::vector<CcdfPoint> a = ccdf(orig);
        std::vector<CcdfPoint> b = ccdf(shifted);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); i++)
        {
            CHECK(b[i].power_dbm == doctest::Approx(a[i].power_dbm - 6.0).epsilon(1e-12));
            CHECK(b[i].ccdf_percent == a[i].ccdf_percent);
        }
    }

    TEST_CASE("position heatmap keeps the per-pose maximum")
    {
        ThresholdSet t = derive_thresholds();
        std::vector<SatellitePose> poses = {pose_at(1, 40.0, -74.0), pose_at(2, 41.0, -73.0),
                                            pose_at(3, 42.0, -72.0)};
        std::vector<InterferenceSample> samples = {
            coupled_sample(1, -150.0), coupled_sample(1, -135.9), coupled_sample(2, -145.0),
            sentinel_sample(3), sentinel_sample(1)};

        std::vector<HeatmapCell> cells = position_heatmap(samples, poses, t);
        REQUIRE(cells.size() == 3);
        CHECK(cells[0].pose_id == 1);
        CHECK(cells[0].coupled);
        CHECK(cells[0].max_dbm == -135.9);
        // -135.9 dBm clears every threshold
        for (int g = 0; g < 4; ++g)
            CHECK(cells[0].exceeds[g]);
        CHECK(cells[1].max_dbm == -145.0);
        CHECK_FALSE(cells[1].exceeds[0]); // gamma1 -136
        CHECK_FALSE(cells[1].exceeds[1]); // gamma2 -140.8
        CHECK(cells[1].exceeds[2]);       // gamma3 -150.8
        CHECK(cells[1].exceeds[3]);
        CHECK_FALSE(cells[2].coupled);
        for (int g = 0; g < 4; ++g)
            CHECK_FALSE(cells[2].exceeds[g]);

        std::vector<InterferenceSample> stray = {coupled_sample(99, -100.0)};
        CHECK_THROWS_AS((void)position_heatmap(stray, poses, t), std::invalid_argument);
    }

    TEST_CASE("heatmap csv marks uncoupled poses")
    {
        ThresholdSet t = derive_thresholds();
        std::vector<SatellitePose> poses = {pose_at(1, 40.0, -74.0), pose_at(2, 41.0, -73.0)};
        std::vector<InterferenceSample> samples = {coupled_sample(1, -135.0),
                                                   sentinel_sample(2)};
        std::vector<HeatmapCell> cells = position_heatmap(samples, poses, t);
        const std::string path =
            (std::filesystem::temp_directory_path() / "satcoex_heatmap_test.csv").string();
        write_heatmap_csv(cells, path);
        std::string text = slurp(path);
        CHECK(text.find("pose_id,lat_deg,lon_deg,max_dbm,exceeds_gamma1") == 0);
        CHECK(text.find("1,40,-74,-135,1,1,1,1") != std::string::npos);
        CHECK(text.find("2,41,-73,nan,0,0,0,0") != std::string::npos);
        std::filesystem::remove(path);
    }

    TEST_CASE("misalignment of the strongest arrival")
    {
        std::vector<SatellitePose> poses = {pose_at(1, 40.0, -74.0), pose_at(2, 41.0, -73.0)};

        InterferenceSample weak = coupled_sample(1, -130.0);
        weak.theta_s_deg = 0.0;
        weak.phi_s_deg = -90.0;
        weak.strongest_aoa = {0.0, -40.0}; // far off, must not be picked
        InterferenceSample strong = coupled_sample(1, -120.0);
        strong.theta_s_deg = 0.0;
        strong.phi_s_deg = -90.0;
        strong.strongest_aoa = {0.0, -85.0}; // five degrees off boresight

        std::vector<MisalignmentCell> cells =
            misalignment_map({weak, strong, sentinel_sample(2)}, poses);
        REQUIRE(cells.size() == 1); // pose 2 never couples
        CHECK(cells[0].pose_id == 1);
        CHECK(cells[0].degrees == doctest::Approx(5.0).epsilon(1e-9));

        const std::string path =
            (std::filesystem::temp_directory_path() / "satcoex_misalign_test.csv").string();
        write_misalignment_csv(cells, path);
        std::string text = slurp(path);
        CHECK(text.find("pose_id,lat_deg,lon_deg,misalignment_deg") == 0);
        CHECK(text.find("\n1,40,-74,") != std::string::npos);
        std::filesystem::remove(path);
    }

    TEST_CASE("exceedance csv layout")
    {
        ExceedanceRow r;
        r.scenario = "network_dl_d25";
        r.cell = "cell1";
        r.density = 25.0;
        r.p_percent = 0.01;
        r.gamma_name = "gamma3";
        r.gamma_dbm = -150.8177;
        r.percent = 0.25;
        r.harmful = true;
        const std::string path =
            (std::filesystem::temp_directory_path() / "satcoex_exceed_test.csv").string();
        write_exceedance_csv({r}, path);
        std::string text = slurp(path);
        CHECK(text.find("scenario,cell,density_cells_km2,p_percent,gamma,gamma_dbm,"
                        "exceed_percent,harmful") == 0);
        CHECK(text.find("network_dl_d25,cell1,25,0.01") != std::string::npos);
        CHECK(text.find(",gamma3,") != std::string::npos);
        CHECK(text.find(",1\n") != std::string::npos);
        std::filesystem::remove(path);
    }

    TEST_CASE("ccdf csv layout")
    {
        std::vector<CcdfPoint> curve = {{-120.0, 75.0}, {-100.0, 12.5}};
        const std::string path =
            (std::filesystem::temp_directory_path() / "satcoex_ccdf_test.csv").string();
        write_ccdf_csv(curve, path);
        std::string text = slurp(path);
        CHECK(text == "power_dbm,ccdf_percent\n-120,75\n-100,12.5\n");
        std::filesystem::remove(path);
    }
}
