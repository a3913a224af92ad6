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

#ifndef SATCOEX_SCENE_HPP
#define SATCOEX_SCENE_HPP

#include "satcoex/geo.hpp"

#include <string>
#include <vector>

namespace satcoex
{

struct BuildingPrism
{
    std::vector<Eigen::Vector2d> footprint; // ordered, stored counterclockwise
    double height_m = 0.0;
    double reflection_loss_db = 3.0;
};

struct GroundExtent
{
    double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;
};

enum class FaceKind
{
    ground,
    wall,
    roof
};

// One planar reflective element of the scene, used by the ray tracer and the
// LOS query. Walls are rectangles spanned by an edge of the footprint and the
// building height; roofs are the footprint polygon at z = height.
struct Face
{
    FaceKind kind = FaceKind::ground;
    int building_index = -1; // -1 for ground
    int face_id = 0;         // unique within the scene
    Eigen::Vector3d normal{0, 0, 1};
    double plane_d = 0.0; // normal . x == plane_d

    // wall: origin + s*edge_dir (s in [0, edge_len]), z in [0, height]
    Eigen::Vector3d wall_origin{0, 0, 0};
    Eigen::Vector3d wall_edge_dir{1, 0, 0};
    double wall_edge_len = 0.0;
    double wall_height = 0.0;

    std::vector<Eigen::Vector2d> roof_polygon; // roof only
    GroundExtent ground_rect;                  // ground only

    double reflection_loss_db = 0.0;

    // Bounding box for acceleration.
    Eigen::Vector3d bb_min{0, 0, 0}, bb_max{0, 0, 0};
};

struct UrbanScene
{
    GeodeticPoint origin; // anchors the local east-north-up frame
    GroundExtent ground;
    double ground_reflection_loss_db = 4.7;
    std::vector<BuildingPrism> buildings;

    std::vector<Face> faces; // derived on load / finalize

    Eigen::Matrix3d enu;        // ENU basis at origin (derived)
    EcefVector origin_ecef;     // derived

    EcefVector local_to_ecef(const Eigen::Vector3d &local) const;
    Eigen::Vector3d ecef_to_local(const EcefVector &ecef) const;
};

// Builds derived members (faces, frames) and checks all invariants; throws
// std::runtime_error with the offending building index on violation.
void finalize_scene(UrbanScene &scene);

UrbanScene load_scene(const std::string &path);

// Canonical text form used for cache keys.
std::string scene_signature(const UrbanScene &scene);

// True iff the hit is strictly inside the face bounds; t is the ray parameter.
bool intersect_face(const Face &f, const Eigen::Vector3d &origin,
                    const Eigen::Vector3d &dir, double t_min, double t_max, double &t_hit);

// True iff segment a-b crosses no building wall or roof.
bool los_clear(const Eigen::Vector3d &a, const Eigen::Vector3d &b, const UrbanScene &scene);

bool point_in_polygon(const Eigen::Vector2d &p, const std::vector<Eigen::Vector2d> &poly);

} // namespace satcoex

#endif
