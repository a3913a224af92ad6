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

#include "satcoex/cache.hpp"

#include "satcoex/csvio.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace satcoex
{

std::string ray_cache_key(const std::string &scene_sig, const Eigen::Vector3d &tx_position,
                          const Eigen::Vector3d &capture_center_ecef,
                          double capture_diameter_m, const LaunchGrid &grid,
                          double frequency_hz, int max_bounces)
{
    std::ostringstream s;
    s << "raycache-v1;" << scene_sig << ";tx=" << fmt_g17(tx_position.x()) << ','
      << fmt_g17(tx_position.y()) << ',' << fmt_g17(tx_position.z())
      << ";cap=" << fmt_g17(capture_center_ecef.x()) << ','
      << fmt_g17(capture_center_ecef.y()) << ',' << fmt_g17(capture_center_ecef.z()) << ','
      << fmt_g17(capture_diameter_m) << ";grid=" << fmt_g17(grid.elevation_step_deg) << ','
      << fmt_g17(grid.azimuth_step_deg) << ',' << fmt_g17(grid.elevation_min_deg) << ','
      << fmt_g17(grid.elevation_max_deg) << ',' << fmt_g17(grid.azimuth_min_deg) << ','
      << fmt_g17(grid.azimuth_max_deg) << ";f=" << fmt_g17(frequency_hz)
      << ";q=" << max_bounces;
    return hex64(fnv1a64(s.str()));
}

std::string ray_cache_path(const std::string &cache_dir, const std::string &key)
{
    return (std::filesystem::path(cache_dir) / ("rays_" + key + ".csv")).string();
}

void save_cached_rays(const std::string &cache_dir, const std::string &key,
                      const std::vector<RayPath> &rays)
{
    std::filesystem::create_directories(cache_dir);
    const std::string payload = rays_to_csv(rays);
    std::string text = "# satcoex-raycache v1 key=" + key +
                       " checksum=" + hex64(fnv1a64(payload)) + "\n" + payload;
    atomic_write_file(ray_cache_path(cache_dir, key), text);
}

std::optional<std::vector<RayPath>> load_cached_rays(const std::string &cache_dir,
                                                     const std::string &key)
{
    const std::string path = ray_cache_path(cache_dir, key);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    const size_t eol = text.find('\n');
    if (eol == std::string::npos)
        return std::nullopt;
    const std::string header = text.substr(0, eol);
    const std::string payload = text.substr(eol + 1);

    const std::string expect_prefix = "# satcoex-raycache v1 key=" + key + " checksum=";
    if (header.rfind(expect_prefix, 0) != 0)
        return std::nullopt;
    const std::string checksum = header.substr(expect_prefix.size());
    if (checksum != hex64(fnv1a64(payload)))
        return std::nullopt;
    try
    {
        return rays_from_csv(payload);
    }
    catch (const std::exception &)
    {
        return std::nullopt;
    }
}

std::vector<RayPath> cached_trace(const UrbanScene &scene, const Eigen::Vector3d &tx_position,
                                  const LaunchGrid &grid, const CaptureSphere &capture,
                                  double frequency_hz, int max_bounces,
                                  const std::string &cache_dir, RayCacheStats *stats)
{
    const std::string key =
        ray_cache_key(scene_signature(scene), tx_position, capture.center,
                      capture.diameter_m, grid, frequency_hz, max_bounces);
    if (auto hit = load_cached_rays(cache_dir, key))
    {
        if (stats)
            ++stats->hits;
        return *hit;
    }
    if (stats)
        ++stats->misses;
    std::vector<RayPath> rays = trace(scene, tx_position, grid, capture, frequency_hz,
                                      max_bounces);
    save_cached_rays(cache_dir, key, rays);
    return rays;
}

} // namespace satcoex
