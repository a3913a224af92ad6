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

#ifndef SATCOEX_TIMEUTIL_HPP
#define SATCOEX_TIMEUTIL_HPP

#include <string>

namespace satcoex
{

struct UtcTime
{
    int year = 2000;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    double second = 0.0;
};

// Julian date, valid 1900-2100.
double julian_day(const UtcTime &t);
UtcTime from_julian_day(double jd);

// Converts a fractional day-of-year into calendar month/day/time.
void days_to_mdhms(int year, double days, int &month, int &day, int &hour,
                   int &minute, double &second);

// Greenwich mean sidereal time in radians, [0, 2pi).
double gmst_rad(double jd_ut1);

UtcTime add_minutes(const UtcTime &t, double minutes);
double minutes_between(const UtcTime &from, const UtcTime &to);

std::string iso8601(const UtcTime &t);

} // namespace satcoex

#endif
