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

#ifndef SATCOEX_CACHE_HPP
#define SATCOEX_CACHE_HPP

#include "satcoex/raytrace.hpp"
#include "satcoex/scene.hpp"

#include <optional>
#include <string>
#include <vector>

namespace satcoex
{

// Content-hash key over everything the trace depends on. Same inputs, same
// key; any input change moves to a fresh file.
std::string ray_cache_key(const std::string &scene_sig, const Eigen::Vector3d &tx_position,
                          const Eigen::Vector3d &capture_center_ecef,
                          double capture_diameter_m, const LaunchGrid &grid,
                          double frequency_hz, int max_bounces);

std::string ray_cache_path(const std::string &cache_dir, const std::string &key);

// File layout: one header line
//   # satcoex-raycache v1 key=<hex> checksum=<hex>
// followed by the rays CSV. The checksum is FNV-1a over the CSV payload.
void save_cached_rays(const std::string &cache_dir, const std::string &key,
                      const std::vector<RayPath> &rays);

// Miss on absent file, header mismatch, wrong key or checksum (corruption is
// a miss, not an error).
std::optional<std::vector<RayPath>> load_cached_rays(const std::string &cache_dir,
                                                     const std::string &key);

struct RayCacheStats
{
    long hits = 0;
    long misses = 0;
};

// Convenience wrapper: load on hit, otherwise trace and persist.
std::vector<RayPath> cached_trace(const UrbanScene &scene, const Eigen::Vector3d &tx_position,
                                  const LaunchGrid &grid, const CaptureSphere &capture,
                                  double frequency_hz, int max_bounces,
                                  const std::string &cache_dir,
                                  RayCacheStats *stats = nullptr);

} // namespace satcoex

#endif
