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

#include "satcoex/antenna.hpp"
#include "satcoex/csvio.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

namespace
{

// Normalized uniform-array factor sin(N psi / 2) / (N sin(psi / 2)). At the
// singular points the limit magnitude is 1; the sign cancels in the power.
double array_factor(int n, double psi)
{
    if (n == 1)
        return 1.0;
    const double half = 0.5 * psi;
    const double s = std::sin(half);
    if (std::abs(s) < 1e-12)
        return 1.0;
    return std::sin(n * half) / (n * s);
}

double cos_pow(double c, double e)
{
    if (c <= 0.0)
        return 0.0;
    if (e == 0.5)
        return std::sqrt(c);
    if (e == 0.0)
        return 1.0;
    if (e == 1.0)
        return c;
    return std::pow(c, e);
}

// Field amplitude of the boresight-steered URA at (theta, phi); the element
// exponents act on the field, so the radiated power follows cos^2m, cos^2n.
double ura_field(const UraSpec &spec, double theta_rad, double phi_rad)
{
    const double ct = std::cos(theta_rad);
    if (ct < 0.0)
        return 0.0; // back hemisphere of the panel
    const double cp = std::cos(phi_rad);
    const double u = std::sin(theta_rad) * cp;
    const double v = std::sin(phi_rad);
    const double kd = 2.0 * pi_d * spec.element_spacing;
    const double af = array_factor(spec.nx, kd * u) * array_factor(spec.ny, kd * v);
    return af * cos_pow(ct, spec.element_exp_m) * cos_pow(cp, spec.element_exp_n);
}

double half_power_beamwidth(const std::function<double(double)> &gain_at_theta_deg,
                            double peak_dbi)
{
    const double target = peak_dbi - 10.0 * std::log10(2.0);
    double prev_t = 0.0, prev_g = peak_dbi;
    for (double t = 0.01; t <= 180.0; t += 0.01)
    {
        const double g = gain_at_theta_deg(t);
        if (g <= target)
        {
            const double w = (prev_g - target) / (prev_g - g);
            return 2.0 * (prev_t + w * (t - prev_t));
        }
        prev_t = t;
        prev_g = g;
    }
    return 360.0;
}

void canonicalize_offset(double &dtheta, double &dphi)
{
    dphi = wrap180(dphi);
    if (dphi > 90.0)
    {
        dphi = 180.0 - dphi;
        dtheta += 180.0;
    }
    else if (dphi < -90.0)
    {
        dphi = -180.0 - dphi;
        dtheta += 180.0;
    }
    dtheta = wrap180(dtheta);
}

} // namespace

double AntennaPattern::gain_db(double delta_theta_deg, double delta_phi_deg) const
{
    double dt = delta_theta_deg, dp = delta_phi_deg;
    canonicalize_offset(dt, dp);

    if (storage == Storage::symmetric)
    {
        const double c = std::cos(deg2rad(dt)) * std::cos(deg2rad(dp));
        const double off = rad2deg(std::acos(std::clamp(c, -1.0, 1.0)));
        const double x = off / step_deg;
        const int i = std::min((int)x, (int)cut_dbi.size() - 2);
        const double w = x - i;
        return cut_dbi[i] + w * (cut_dbi[i + 1] - cut_dbi[i]);
    }

    const double xt = (dt + 180.0) / step_deg;
    const double xp = (dp + 90.0) / step_deg;
    const int it = std::clamp((int)xt, 0, n_theta - 2);
    const int ip = std::clamp((int)xp, 0, n_phi - 2);
    const double wt = std::clamp(xt - it, 0.0, 1.0);
    const double wp = std::clamp(xp - ip, 0.0, 1.0);

    const double g00 = gain_grid_at(it, ip);
    const double g10 = gain_grid_at(it + 1, ip);
    const double g01 = gain_grid_at(it, ip + 1);
    const double g11 = gain_grid_at(it + 1, ip + 1);
    return g00 * (1 - wt) * (1 - wp) + g10 * wt * (1 - wp) + g01 * (1 - wt) * wp +
           g11 * wt * wp;
}

AntennaPattern synthesize_ura(const UraSpec &spec)
{
    if (spec.nx < 1 || spec.ny < 1)
        throw std::runtime_error("ura: element counts must be >= 1");
    if (spec.element_spacing <= 0.0)
        throw std::runtime_error("ura: spacing must be > 0");
    if (spec.element_exp_m < 0.0 || spec.element_exp_n < 0.0)
        throw std::runtime_error("ura: element exponents must be >= 0");

    AntennaPattern p;
    p.storage = AntennaPattern::Storage::grid;
    p.step_deg = 0.1;
    p.n_theta = 3601;
    p.n_phi = 1801;
    p.grid_dbi.resize((size_t)p.n_theta * p.n_phi);

    // Power on the synthesis grid, plus the sphere integral for the
    // directivity normalization (trapezoid weights on both axes).
    std::vector<double> power((size_t)p.n_theta * p.n_phi);
    const double dstep = deg2rad(p.step_deg);
    double integral = 0.0;
    for (int ip = 0; ip < p.n_phi; ip++)
    {
        const double phi = deg2rad(-90.0 + ip * p.step_deg);
        const double wp = (ip == 0 || ip == p.n_phi - 1) ? 0.5 : 1.0;
        const double cphi = std::cos(phi);
        double row_sum = 0.0;
        for (int it = 0; it < p.n_theta; it++)
        {
            const double theta = deg2rad(-180.0 + it * p.step_deg);
            const double f = ura_field(spec, theta, phi);
            const double pw = f * f;
            power[(size_t)ip * p.n_theta + it] = pw;
            const double wt = (it == 0 || it == p.n_theta - 1) ? 0.5 : 1.0;
            row_sum += wt * pw;
        }
        integral += wp * row_sum * cphi;
    }
    integral *= dstep * dstep;

    const double d0 = 4.0 * pi_d / integral; // power at boresight is 1
    p.peak_gain_dbi = 10.0 * std::log10(d0);
    const double floor_dbi = p.peak_gain_dbi - 100.0;
    for (size_t i = 0; i < power.size(); i++)
    {
        const double g = (power[i] > 0.0) ? 10.0 * std::log10(d0 * power[i]) : floor_dbi;
        p.grid_dbi[i] = (float)std::max(g, floor_dbi);
    }

    p.hpbw_azimuth_deg = half_power_beamwidth(
        [&](double t) {
            const double f = ura_field(spec, deg2rad(t), 0.0);
            return (f > 0.0) ? 10.0 * std::log10(d0 * f * f) : floor_dbi;
        },
        p.peak_gain_dbi);
    return p;
}

AntennaPattern load_reflector_pattern(const std::string &path)
{
    const auto rows = read_csv(path, "offaxis_deg,gain_dbi");
    std::vector<std::pair<double, double>> cut;
    for (const auto &r : rows)
    {
        if (r.size() != 2)
            throw std::runtime_error(path + ": cut row needs 2 fields");
        cut.emplace_back(to_double(r[0]), to_double(r[1]));
    }
    if (cut.size() < 2)
        throw std::runtime_error(path + ": cut needs >= 2 rows");
    std::sort(cut.begin(), cut.end());
    if (cut.front().first > 1e-9 || cut.back().first < 180.0 - 1e-9)
        throw std::runtime_error(path + ": cut must cover off-axis angles 0 through 180");

    AntennaPattern p;
    p.storage = AntennaPattern::Storage::symmetric;
    p.step_deg = 0.1;
    const int n = 1801;
    p.cut_dbi.resize(n);
    size_t k = 0;
    for (int i = 0; i < n; i++)
    {
        const double off = i * p.step_deg;
        while (k + 2 < cut.size() && cut[k + 1].first < off)
            k++;
        const auto &a = cut[k];
        const auto &b = cut[k + 1];
        const double w = (off - a.first) / (b.first - a.first);
        p.cut_dbi[i] = (float)(a.second + std::clamp(w, 0.0, 1.0) * (b.second - a.second));
    }

    p.peak_gain_dbi = p.cut_dbi[0];
    for (int i = 1; i < n; i++)
        if (p.cut_dbi[i] > p.peak_gain_dbi + 1e-6)
            throw std::runtime_error(path + ": cut gain exceeds the boresight value");

    p.hpbw_azimuth_deg = half_power_beamwidth(
        [&](double t) {
            const double x = t / p.step_deg;
            const int i = std::min((int)x, n - 2);
            const double w = x - i;
            return p.cut_dbi[i] + w * (p.cut_dbi[i + 1] - p.cut_dbi[i]);
        },
        p.peak_gain_dbi);
    return p;
}

double gain_toward(const AntennaPattern &pattern, const Orientation &mount,
                   const Orientation &direction)
{
    return pattern.gain_db(wrap180(direction.theta_deg - mount.theta_deg),
                           direction.phi_deg - mount.phi_deg);
}

void write_pattern_cut_csv(const AntennaPattern &pattern, const std::string &path)
{
    std::ostringstream ss;
    ss << "offaxis_deg,gain_dbi\n";
    for (int i = 0; i <= 1800; i++)
    {
        const double off = i * 0.1;
        ss << fmt_fixed(off, 1) << "," << fmt_g17(pattern.gain_db(off, 0.0)) << "\n";
    }
    atomic_write_file(path, ss.str());
}

double pattern_sphere_integral(const AntennaPattern &pattern)
{
    if (pattern.storage == AntennaPattern::Storage::symmetric)
    {
        const double dstep = deg2rad(pattern.step_deg);
        double integral = 0.0;
        for (size_t i = 0; i < pattern.cut_dbi.size(); i++)
        {
            const double off = i * dstep;
            const double w = (i == 0 || i + 1 == pattern.cut_dbi.size()) ? 0.5 : 1.0;
            integral += w * std::pow(10.0, pattern.cut_dbi[i] / 10.0) * std::sin(off);
        }
        return integral * 2.0 * pi_d * dstep;
    }

    const double dstep = deg2rad(pattern.step_deg);
    double integral = 0.0;
    for (int ip = 0; ip < pattern.n_phi; ip++)
    {
        const double phi = deg2rad(-90.0 + ip * pattern.step_deg);
        const double wp = (ip == 0 || ip == pattern.n_phi - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int it = 0; it < pattern.n_theta; it++)
        {
            const double wt = (it == 0 || it == pattern.n_theta - 1) ? 0.5 : 1.0;
            row += wt * std::pow(10.0, pattern.gain_grid_at(it, ip) / 10.0);
        }
        integral += wp * row * std::cos(phi);
    }
    return integral * dstep * dstep;
}

} // namespace satcoex
