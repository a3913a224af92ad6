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

#include "satcoex/orbit.hpp"
#include "satcoex/csvio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

int tle_line_checksum(const std::string &line68)
{
    int sum = 0;
    for (size_t i = 0; i < line68.size() && i < 68; i++)
    {
        const char c = line68[i];
        if (c >= '0' && c <= '9')
            sum += c - '0';
        else if (c == '-')
            sum += 1;
    }
    return sum % 10;
}

double parse_tle_exp(const std::string &field)
{
    // " 28098-4" means 0.28098e-4
    std::string f = field;
    if (f.size() != 8)
        throw std::runtime_error("tle: bad exponent field '" + field + "'");
    const double sign = (f[0] == '-') ? -1.0 : 1.0;
    const std::string mant = f.substr(1, 5);
    const double esign = (f[6] == '-') ? -1.0 : 1.0;
    const int edig = f[7] - '0';
    if (edig < 0 || edig > 9)
        throw std::runtime_error("tle: bad exponent field '" + field + "'");
    double m = 0.0;
    for (char c : mant)
    {
        if (c == ' ')
            c = '0';
        if (c < '0' || c > '9')
            throw std::runtime_error("tle: bad exponent field '" + field + "'");
        m = m * 10.0 + (c - '0');
    }
    return sign * (m / 100000.0) * std::pow(10.0, esign * edig);
}

namespace
{

double field_to_double(const std::string &s, const char *what)
{
    try
    {
        return to_double(s);
    }
    catch (const std::exception &)
    {
        throw std::runtime_error(std::string("tle: cannot parse ") + what + " from '" + s +
                                 "'");
    }
}

} // namespace

TwoLineElements parse_tle(const std::string &line1, const std::string &line2)
{
    if (line1.size() < 69 || line2.size() < 69)
        throw std::runtime_error("tle: lines must be 69 columns");
    if (line1[0] != '1' || line2[0] != '2')
        throw std::runtime_error("tle: line numbers must be 1 and 2");

    for (const auto *lp : {&line1, &line2})
    {
        const std::string &l = *lp;
        const int want = l[68] - '0';
        if (want < 0 || want > 9 || tle_line_checksum(l) != want)
            throw std::runtime_error("tle: checksum mismatch on line " +
                                     std::string(1, l[0]));
    }
    if (line1.substr(2, 5) != line2.substr(2, 5))
        throw std::runtime_error("tle: satellite numbers differ between lines");

    TwoLineElements tle;
    tle.satnum = line1.substr(2, 5);
    tle.intl_designator = line1.substr(9, 8);

    const int yy = (int)field_to_double(line1.substr(18, 2), "epoch year");
    tle.epoch_year = (yy < 57) ? 2000 + yy : 1900 + yy;
    tle.epoch_days = field_to_double(line1.substr(20, 12), "epoch days");
    tle.ndot = field_to_double(line1.substr(33, 10), "ndot");
    tle.nddot = parse_tle_exp(line1.substr(44, 8));
    tle.bstar = parse_tle_exp(line1.substr(53, 8));

    tle.inclination_deg = field_to_double(line2.substr(8, 8), "inclination");
    tle.raan_deg = field_to_double(line2.substr(17, 8), "raan");
    tle.eccentricity = field_to_double("0." + line2.substr(26, 7), "eccentricity");
    tle.arg_perigee_deg = field_to_double(line2.substr(34, 8), "argument of perigee");
    tle.mean_anomaly_deg = field_to_double(line2.substr(43, 8), "mean anomaly");
    tle.mean_motion_rev_day = field_to_double(line2.substr(52, 11), "mean motion");

    if (tle.eccentricity < 0.0 || tle.eccentricity >= 1.0)
        throw std::runtime_error("tle: eccentricity out of [0, 1)");
    if (tle.mean_motion_rev_day <= 0.0)
        throw std::runtime_error("tle: mean motion must be > 0");
    if (tle.inclination_deg < 0.0 || tle.inclination_deg > 180.0)
        throw std::runtime_error("tle: inclination out of [0, 180]");
    if (tle.epoch_days < 1.0 || tle.epoch_days >= 367.0)
        throw std::runtime_error("tle: epoch day out of range");

    int month, day, hour, minute;
    double second;
    days_to_mdhms(tle.epoch_year, tle.epoch_days, month, day, hour, minute, second);
    tle.epoch = UtcTime{tle.epoch_year, month, day, hour, minute, second};
    tle.jdsatepoch = julian_day(tle.epoch);
    return tle;
}

TwoLineElements load_tle_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open TLE file: " + path);
    std::string line, l1;
    while (std::getline(in, line))
    {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.rfind("1 ", 0) == 0)
            l1 = line;
        else if (line.rfind("2 ", 0) == 0 && !l1.empty())
            return parse_tle(l1, line);
    }
    throw std::runtime_error("no TLE found in " + path);
}

namespace
{

Sgp4State make_sgp4(const TwoLineElements &tle)
{
    const double rad_per_min = tle.mean_motion_rev_day * 2.0 * pi_d / 1440.0;
    Sgp4State s = sgp4_init(tle.jdsatepoch, tle.eccentricity, deg2rad(tle.inclination_deg),
                            deg2rad(tle.raan_deg), deg2rad(tle.arg_perigee_deg),
                            deg2rad(tle.mean_anomaly_deg), rad_per_min, tle.bstar);
    if (s.error != 0)
        throw std::runtime_error("sgp4 init: " + sgp4_error_message(s.error));
    return s;
}

// Two-body + J2 secular propagation from the TLE mean elements.
void kepler_j2_teme(const TwoLineElements &tle, double tsince, double r_km[3],
                    double v_kms[3])
{
    const Sgp4GravityConstants g = sgp4_wgs72();
    const double n0 = tle.mean_motion_rev_day * 2.0 * pi_d / 1440.0; // rad/min
    const double e = tle.eccentricity;
    const double inc = deg2rad(tle.inclination_deg);
    const double a = std::pow(g.xke / n0, 2.0 / 3.0); // earth radii
    const double p = a * (1.0 - e * e);
    const double cosi = std::cos(inc);
    const double fac = 0.75 * g.j2 * n0 / (p * p);

    const double raan_dot = -2.0 * fac * cosi;
    const double argp_dot = fac * (5.0 * cosi * cosi - 1.0);
    const double m_dot = n0 + fac * std::sqrt(1.0 - e * e) * (3.0 * cosi * cosi - 1.0);

    const double raan = deg2rad(tle.raan_deg) + raan_dot * tsince;
    const double argp = deg2rad(tle.arg_perigee_deg) + argp_dot * tsince;
    double m = std::fmod(deg2rad(tle.mean_anomaly_deg) + m_dot * tsince, 2.0 * pi_d);

    double bigE = m;
    for (int i = 0; i < 32; i++)
    {
        const double d = (bigE - e * std::sin(bigE) - m) / (1.0 - e * std::cos(bigE));
        bigE -= d;
        if (std::abs(d) < 1e-13)
            break;
    }
    const double cosE = std::cos(bigE), sinE = std::sin(bigE);
    const double rmag = a * (1.0 - e * cosE);
    const double nu = std::atan2(std::sqrt(1.0 - e * e) * sinE, cosE - e);

    const Eigen::Vector3d r_pf(rmag * std::cos(nu), rmag * std::sin(nu), 0.0);
    const double vf = g.xke / std::sqrt(p);
    const Eigen::Vector3d v_pf(-vf * std::sin(nu), vf * (e + std::cos(nu)), 0.0);

    Eigen::Matrix3d rot;
    rot = Eigen::AngleAxisd(raan, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(inc, Eigen::Vector3d::UnitX()) *
          Eigen::AngleAxisd(argp, Eigen::Vector3d::UnitZ());
    const Eigen::Vector3d r = rot * r_pf * g.radiusearthkm;
    const Eigen::Vector3d v = rot * v_pf * (g.radiusearthkm / 60.0);
    for (int i = 0; i < 3; i++)
    {
        r_km[i] = r[i];
        v_kms[i] = v[i];
    }
}

SatellitePose pose_from_teme(const TwoLineElements &tle, double tsince, const double r_km[3],
                             const double v_kms[3], int pose_id)
{
    const double jd = tle.jdsatepoch + tsince / 1440.0;
    const double theta = gmst_rad(jd);
    Eigen::Matrix3d rz;
    rz << std::cos(theta), std::sin(theta), 0.0, //
        -std::sin(theta), std::cos(theta), 0.0,  //
        0.0, 0.0, 1.0;

    const Eigen::Vector3d r_teme(r_km[0], r_km[1], r_km[2]);
    const Eigen::Vector3d v_teme(v_kms[0], v_kms[1], v_kms[2]);
    const Eigen::Vector3d omega(0.0, 0.0, earth_rotation_rate);

    SatellitePose pose;
    pose.pose_id = pose_id;
    pose.time = add_minutes(tle.epoch, tsince);
    pose.position = rz * r_teme * 1000.0;
    const Eigen::Vector3d v_ecef = rz * v_teme * 1000.0 - omega.cross(pose.position);
    pose.velocity_direction = v_ecef.normalized();
    const GeodeticPoint gp = ecef_to_geodetic(pose.position);
    pose.altitude_m = gp.altitude_m;
    pose.subsatellite = GeodeticPoint{gp.latitude_deg, gp.longitude_deg, 0.0};
    return pose;
}

} // namespace

void propagate_teme(const TwoLineElements &tle, double tsince_min, double r_km[3],
                    double v_kms[3], PropagatorKind kind)
{
    if (kind == PropagatorKind::kepler_j2)
    {
        kepler_j2_teme(tle, tsince_min, r_km, v_kms);
        return;
    }
    Sgp4State s = make_sgp4(tle);
    if (!sgp4_propagate(s, tsince_min, r_km, v_kms))
        throw std::runtime_error("sgp4: " + sgp4_error_message(s.error));
}

SatellitePose propagate(const TwoLineElements &tle, const UtcTime &t, PropagatorKind kind)
{
    const double tsince = minutes_between(tle.epoch, t);
    double r[3], v[3];
    propagate_teme(tle, tsince, r, v, kind);
    return pose_from_teme(tle, tsince, r, v, 0);
}

bool in_study_area(const GeodeticPoint &sub, const SpaceStudyArea &area)
{
    const Eigen::Matrix3d basis =
        enu_basis(area.center.latitude_deg, area.center.longitude_deg);
    const EcefVector c =
        geodetic_to_ecef(GeodeticPoint{area.center.latitude_deg, area.center.longitude_deg, 0.0});
    const EcefVector p = geodetic_to_ecef(GeodeticPoint{sub.latitude_deg, sub.longitude_deg, 0.0});
    const Eigen::Vector3d local = basis.transpose() * (p - c);
    const double half = 0.5 * area.side_length_m;
    return std::abs(local.x()) <= half && std::abs(local.y()) <= half;
}

std::vector<SatellitePose> sample_track_in_area(const TwoLineElements &tle,
                                                const SpaceStudyArea &area,
                                                double spacing_m, double span_minutes,
                                                PropagatorKind kind)
{
    if (spacing_m <= 0.0)
        throw std::runtime_error("track sampling: spacing must be > 0");

    Sgp4State sgp4_state;
    if (kind == PropagatorKind::sgp4)
        sgp4_state = make_sgp4(tle);

    auto pose_at = [&](double tsince) {
        double r[3], v[3];
        if (kind == PropagatorKind::sgp4)
        {
            if (!sgp4_propagate(sgp4_state, tsince, r, v))
                throw std::runtime_error("sgp4: " + sgp4_error_message(sgp4_state.error));
        }
        else
            kepler_j2_teme(tle, tsince, r, v);
        return pose_from_teme(tle, tsince, r, v, 0);
    };

    const Eigen::Matrix3d basis =
        enu_basis(area.center.latitude_deg, area.center.longitude_deg);
    const EcefVector center = geodetic_to_ecef(
        GeodeticPoint{area.center.latitude_deg, area.center.longitude_deg, 0.0});
    const double half = 0.5 * area.side_length_m;

    auto inside = [&](double tsince) {
        const SatellitePose pose = pose_at(tsince);
        const EcefVector p = geodetic_to_ecef(pose.subsatellite);
        const Eigen::Vector3d local = basis.transpose() * (p - center);
        return std::abs(local.x()) <= half && std::abs(local.y()) <= half;
    };

    std::vector<SatellitePose> poses;
    int pose_id = 0;

    // Samples one pass starting at its entry time; returns the exit time.
    auto sample_pass = [&](double t_entry) {
        double t = t_entry;
        SatellitePose pose = pose_at(t);
        pose.pose_id = pose_id++;
        poses.push_back(pose);
        GeodeticPoint prev_sub = pose.subsatellite;

        // initial step guess from a 7.4 km/s nominal ground speed
        double dt_guess = spacing_m / 7400.0 / 60.0;
        for (;;)
        {
            // bracket the time where the arc from the previous sample reaches
            // `spacing_m`, then bisect
            double lo = t, hi = t + dt_guess;
            while (ground_arc_m(prev_sub, pose_at(hi).subsatellite) < spacing_m)
            {
                lo = hi;
                hi += 0.5 * dt_guess;
                if (hi > t + 10.0 * dt_guess)
                    throw std::runtime_error("track sampling: ground track stalled");
            }
            for (int i = 0; i < 48; i++)
            {
                const double mid = 0.5 * (lo + hi);
                if (ground_arc_m(prev_sub, pose_at(mid).subsatellite) < spacing_m)
                    lo = mid;
                else
                    hi = mid;
            }
            t = 0.5 * (lo + hi);
            pose = pose_at(t);
            const EcefVector p = geodetic_to_ecef(pose.subsatellite);
            const Eigen::Vector3d local = basis.transpose() * (p - center);
            if (std::abs(local.x()) > half || std::abs(local.y()) > half)
                return t;
            pose.pose_id = pose_id++;
            poses.push_back(pose);
            dt_guess = spacing_m / 7400.0 / 60.0;
            prev_sub = pose.subsatellite;
        }
    };

    const double dt_scan = 0.25; // minutes
    double t = 0.0;
    bool prev_in = inside(t);
    if (prev_in)
        t = sample_pass(0.0);
    while (t < span_minutes)
    {
        const double t_next = std::min(t + dt_scan, span_minutes);
        const bool now_in = inside(t_next);
        if (!prev_in && now_in)
        {
            // bisect the boundary crossing in (t, t_next]
            double lo = t, hi = t_next;
            for (int i = 0; i < 48; i++)
            {
                const double mid = 0.5 * (lo + hi);
                if (inside(mid))
                    hi = mid;
                else
                    lo = mid;
            }
            t = sample_pass(hi);
            prev_in = true;
        }
        else
        {
            prev_in = now_in;
            t = t_next;
        }
    }
    return poses;
}

std::vector<int> per_pass_counts(const std::vector<SatellitePose> &poses, double spacing_m)
{
    (void)spacing_m;
    std::vector<int> counts;
    UtcTime prev;
    bool have_prev = false;
    for (const auto &p : poses)
    {
        if (!have_prev || minutes_between(prev, p.time) > 5.0)
            counts.push_back(0);
        counts.back()++;
        prev = p.time;
        have_prev = true;
    }
    return counts;
}

void write_poses_csv(const std::vector<SatellitePose> &poses, const std::string &path)
{
    std::ostringstream ss;
    ss << "time_iso8601,ecef_x_m,ecef_y_m,ecef_z_m,lat_deg,lon_deg,alt_m\n";
    for (const auto &p : poses)
        ss << iso8601(p.time) << "," << fmt_g17(p.position.x()) << ","
           << fmt_g17(p.position.y()) << "," << fmt_g17(p.position.z()) << ","
           << fmt_g17(p.subsatellite.latitude_deg) << ","
           << fmt_g17(p.subsatellite.longitude_deg) << "," << fmt_g17(p.altitude_m) << "\n";
    atomic_write_file(path, ss.str());
}

} // namespace satcoex
