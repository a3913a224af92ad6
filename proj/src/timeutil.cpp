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

#include "satcoex/timeutil.hpp"
#include "satcoex/geo.hpp"

#include <cmath>
#include <cstdio>

namespace satcoex
{

double julian_day(const UtcTime &t)
{
    const double jd =
        367.0 * t.year - std::floor(7.0 * (t.year + std::floor((t.month + 9.0) / 12.0)) * 0.25) +
        std::floor(275.0 * t.month / 9.0) + t.day + 1721013.5;
    const double frac = (t.second + t.minute * 60.0 + t.hour * 3600.0) / 86400.0;
    return jd + frac;
}

void days_to_mdhms(int year, double days, int &month, int &day, int &hour,
                   int &minute, double &second)
{
    static const int lmonth_normal[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int lmonth[12];
    for (int i = 0; i < 12; i++)
        lmonth[i] = lmonth_normal[i];
    if ((year % 4) == 0)
        lmonth[1] = 29;

    const int dayofyr = (int)std::floor(days);
    int i = 1, inttemp = 0;
    while (dayofyr > inttemp + lmonth[i - 1] && i < 12)
    {
        inttemp += lmonth[i - 1];
        i++;
    }
    month = i;
    day = dayofyr - inttemp;

    double temp = (days - dayofyr) * 24.0;
    hour = (int)std::floor(temp);
    temp = (temp - hour) * 60.0;
    minute = (int)std::floor(temp);
    second = (temp - minute) * 3600.0 / 60.0;
}

UtcTime from_julian_day(double jd)
{
    const double z = jd + 0.5;
    double zint = std::floor(z);
    double zfrac = z - zint;

    // Meeus calendar conversion
    const double alpha = std::floor((zint - 1867216.25) / 36524.25);
    const double a = zint + 1.0 + alpha - std::floor(alpha / 4.0);
    const double b = a + 1524.0;
    const double c = std::floor((b - 122.1) / 365.25);
    const double d = std::floor(365.25 * c);
    const double e = std::floor((b - d) / 30.6001);

    UtcTime t;
    const double dayf = b - d - std::floor(30.6001 * e) + zfrac;
    t.day = (int)std::floor(dayf);
    t.month = (int)(e < 14 ? e - 1 : e - 13);
    t.year = (int)(t.month > 2 ? c - 4716 : c - 4715);

    double frac = dayf - t.day;
    double secs = frac * 86400.0;
    // round to microseconds to absorb jd representation noise
    secs = std::round(secs * 1e6) / 1e6;
    if (secs >= 86400.0)
    {
        secs -= 86400.0;
        t.day += 1;
    }
    t.hour = (int)std::floor(secs / 3600.0);
    t.minute = (int)std::floor((secs - t.hour * 3600.0) / 60.0);
    t.second = secs - t.hour * 3600.0 - t.minute * 60.0;
    return t;
}

double gmst_rad(double jd_ut1)
{
    const double twopi = 2.0 * pi_d;
    const double tut1 = (jd_ut1 - 2451545.0) / 36525.0;
    double temp = -6.2e-6 * tut1 * tut1 * tut1 + 0.093104 * tut1 * tut1 +
                  (876600.0 * 3600.0 + 8640184.812866) * tut1 + 67310.54841;
    temp = std::fmod(deg2rad(temp) / 240.0, twopi);
    if (temp < 0.0)
        temp += twopi;
    return temp;
}

UtcTime add_minutes(const UtcTime &t, double minutes)
{
    return from_julian_day(julian_day(t) + minutes / 1440.0);
}

double minutes_between(const UtcTime &from, const UtcTime &to)
{
    return (julian_day(to) - julian_day(from)) * 1440.0;
}

std::string iso8601(const UtcTime &t)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%06.3fZ", t.year, t.month,
                  t.day, t.hour, t.minute, t.second);
    return std::string(buf);
}

} // namespace satcoex
