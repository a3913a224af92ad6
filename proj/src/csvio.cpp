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

#include "satcoex/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

std::string fmt_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::string fmt_fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return std::string(buf);
}

uint64_t fnv1a64(std::string_view data)
{
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data)
    {
        h ^= (uint64_t)c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(uint64_t v)
{
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)v);
    return std::string(buf);
}

std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write_file(const std::string &path, const std::string &content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open file for writing: " + tmp);
        out.write(content.data(), (std::streamsize)content.size());
        if (!out)
            throw std::runtime_error("short write: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line)
    {
        if (c == ',')
        {
            out.push_back(cur);
            cur.clear();
        }
        else if (c != '\r')
            cur.push_back(c);
    }
    out.push_back(cur);
    for (auto &f : out)
    {
        size_t b = f.find_first_not_of(" \t");
        size_t e = f.find_last_not_of(" \t");
        f = (b == std::string::npos) ? "" : f.substr(b, e - b + 1);
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string &path,
                                               const std::string &expect_header)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool saw_header = expect_header.empty();
    while (std::getline(in, line))
    {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (!saw_header)
        {
            std::string norm = line;
            norm.erase(std::remove(norm.begin(), norm.end(), ' '), norm.end());
            std::string want = expect_header;
            want.erase(std::remove(want.begin(), want.end(), ' '), want.end());
            if (norm != want)
                throw std::runtime_error(path + ": unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        rows.push_back(split_csv_line(line));
    }
    if (!saw_header)
        throw std::runtime_error(path + ": missing header");
    return rows;
}

double to_double(const std::string &s)
{
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str())
        throw std::runtime_error("not a number: '" + s + "'");
    return v;
}

} // namespace satcoex
