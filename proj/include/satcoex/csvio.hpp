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

#ifndef SATCOEX_CSVIO_HPP
#define SATCOEX_CSVIO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace satcoex
{

// Round-trip safe decimal formatting of a double.
std::string fmt_g17(double v);

// Fixed-precision formatting for report columns.
std::string fmt_fixed(double v, int digits);

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t v);

std::string read_text_file(const std::string &path);

// Writes to "<path>.tmp" then renames onto path.
void atomic_write_file(const std::string &path, const std::string &content);

std::vector<std::string> split_csv_line(const std::string &line);

// Parses a CSV file into rows of fields. Skips blank lines and lines starting
// with '#'. If expect_header is non-empty the first data line must equal it.
std::vector<std::vector<std::string>> read_csv(const std::string &path,
                                               const std::string &expect_header = "");

double to_double(const std::string &s);

} // namespace satcoex

#endif
