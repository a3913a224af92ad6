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

#include "satcoex/scene.hpp"
#include "satcoex/csvio.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

EcefVector UrbanScene::local_to_ecef(const Eigen::Vector3d &local) const
{
    return origin_ecef + enu * local;
}

Eigen::Vector3d UrbanScene::ecef_to_local(const EcefVector &ecef) const
{
    return enu.transpose() * (ecef - origin_ecef);
}

static double signed_area(const std::vector<Eigen::Vector2d> &poly)
{
    double a = 0.0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; i++)
    {
        const auto &p = poly[i];
        const auto &q = poly[(i + 1) % n];
        a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * a;
}

static bool segments_cross(const Eigen::Vector2d &a, const Eigen::Vector2d &b,
                           const Eigen::Vector2d &c, const Eigen::Vector2d &d)
{
    auto orient = [](const Eigen::Vector2d &p, const Eigen::Vector2d &q, const Eigen::Vector2d &r) {
        const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
        return (v > 1e-12) - (v < -1e-12);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0);
}

static bool polygon_simple(const std::vector<Eigen::Vector2d> &poly)
{
    const size_t n = poly.size();
    for (size_t i = 0; i < n; i++)
        for (size_t j = i + 1; j < n; j++)
        {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j)
                continue;
            if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
                return false;
        }
    return true;
}

bool point_in_polygon(const Eigen::Vector2d &p, const std::vector<Eigen::Vector2d> &poly)
{
    bool inside = false;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++)
    {
        const auto &a = poly[i];
        const auto &b = poly[j];
        if ((a.y() > p.y()) != (b.y() > p.y()))
        {
            const double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
            if (p.x() < x)
                inside = !inside;
        }
    }
    return inside;
}

void finalize_scene(UrbanScene &scene)
{
    if (scene.ground.x_max <= scene.ground.x_min || scene.ground.y_max <= scene.ground.y_min)
        throw std::runtime_error("scene: degenerate ground extent");
    if (scene.ground_reflection_loss_db < 0.0)
        throw std::runtime_error("scene: negative ground reflection loss");
    if (scene.origin.latitude_deg < -90.0 || scene.origin.latitude_deg > 90.0 ||
        scene.origin.longitude_deg < -180.0 || scene.origin.longitude_deg > 180.0)
        throw std::runtime_error("scene: origin out of range");

    for (size_t b = 0; b < scene.buildings.size(); b++)
    {
        auto &prism = scene.buildings[b];
        const std::string where = "scene: building " + std::to_string(b);
        if (prism.footprint.size() < 3)
            throw std::runtime_error(where + ": footprint needs >= 3 vertices");
        if (!(prism.height_m > 0.0))
            throw std::runtime_error(where + ": height must be > 0");
        if (prism.reflection_loss_db < 0.0)
            throw std::runtime_error(where + ": negative reflection loss");
        if (!polygon_simple(prism.footprint))
            throw std::runtime_error(where + ": footprint self-intersects");
        if (signed_area(prism.footprint) < 0.0)
            std::reverse(prism.footprint.begin(), prism.footprint.end());
        for (const auto &v : prism.footprint)
            if (v.x() < scene.ground.x_min || v.x() > scene.ground.x_max ||
                v.y() < scene.ground.y_min || v.y() > scene.ground.y_max)
                throw std::runtime_error(where + ": footprint outside ground extent");
    }

    scene.enu = enu_basis(scene.origin.latitude_deg, scene.origin.longitude_deg);
    scene.origin_ecef = geodetic_to_ecef(scene.origin);

    scene.faces.clear();
    int id = 0;

    Face g;
    g.kind = FaceKind::ground;
    g.face_id = id++;
    g.normal = Eigen::Vector3d(0, 0, 1);
    g.plane_d = 0.0;
    g.ground_rect = scene.ground;
    g.reflection_loss_db = scene.ground_reflection_loss_db;
    g.bb_min = Eigen::Vector3d(scene.ground.x_min, scene.ground.y_min, 0.0);
    g.bb_max = Eigen::Vector3d(scene.ground.x_max, scene.ground.y_max, 0.0);
    scene.faces.push_back(g);

    for (size_t b = 0; b < scene.buildings.size(); b++)
    {
        const auto &prism = scene.buildings[b];
        const size_t n = prism.footprint.size();
        for (size_t i = 0; i < n; i++)
        {
            const Eigen::Vector2d p = prism.footprint[i];
            const Eigen::Vector2d q = prism.footprint[(i + 1) % n];
            const Eigen::Vector2d e = q - p;
            const double len = e.norm();
            if (len < 1e-9)
                throw std::runtime_error("scene: building " + std::to_string(b) +
                                         ": zero-length footprint edge");
            Face w;
            w.kind = FaceKind::wall;
            w.building_index = (int)b;
            w.face_id = id++;
            w.wall_origin = Eigen::Vector3d(p.x(), p.y(), 0.0);
            w.wall_edge_dir = Eigen::Vector3d(e.x() / len, e.y() / len, 0.0);
            w.wall_edge_len = len;
            w.wall_height = prism.height_m;
            w.normal = Eigen::Vector3d(e.y() / len, -e.x() / len, 0.0); // outward for CCW
            w.plane_d = w.normal.dot(w.wall_origin);
            w.reflection_loss_db = prism.reflection_loss_db;
            w.bb_min = Eigen::Vector3d(std::min(p.x(), q.x()), std::min(p.y(), q.y()), 0.0);
            w.bb_max = Eigen::Vector3d(std::max(p.x(), q.x()), std::max(p.y(), q.y()),
                                       prism.height_m);
            scene.faces.push_back(w);
        }

        Face r;
        r.kind = FaceKind::roof;
        r.building_index = (int)b;
        r.face_id = id++;
        r.normal = Eigen::Vector3d(0, 0, 1);
        r.plane_d = prism.height_m;
        r.roof_polygon = prism.footprint;
        r.reflection_loss_db = prism.reflection_loss_db;
        Eigen::Vector2d lo = prism.footprint[0], hi = prism.footprint[0];
        for (const auto &v : prism.footprint)
        {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        r.bb_min = Eigen::Vector3d(lo.x(), lo.y(), prism.height_m);
        r.bb_max = Eigen::Vector3d(hi.x(), hi.y(), prism.height_m);
        scene.faces.push_back(r);
    }
}

UrbanScene load_scene(const std::string &path)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(read_text_file(path));
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::runtime_error("scene parse failure in " + path + ": " + e.what());
    }

    UrbanScene scene;
    try
    {
        scene.origin.latitude_deg = j.at("origin").at("lat").get<double>();
        scene.origin.longitude_deg = j.at("origin").at("lon").get<double>();
        scene.origin.altitude_m = j["origin"].value("alt", 0.0);

        const auto &g = j.at("ground");
        scene.ground.x_min = g.at("x_min").get<double>();
        scene.ground.y_min = g.at("y_min").get<double>();
        scene.ground.x_max = g.at("x_max").get<double>();
        scene.ground.y_max = g.at("y_max").get<double>();
        scene.ground_reflection_loss_db = g.value("reflection_loss_db", 4.7);

        for (const auto &bj : j.value("buildings", nlohmann::json::array()))
        {
            BuildingPrism p;
            for (const auto &v : bj.at("footprint"))
                p.footprint.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
            p.height_m = bj.at("height_m").get<double>();
            p.reflection_loss_db = bj.value("reflection_loss_db", 3.0);
            scene.buildings.push_back(std::move(p));
        }
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::runtime_error("scene parse failure in " + path + ": " + e.what());
    }

    finalize_scene(scene);
    return scene;
}

std::string scene_signature(const UrbanScene &scene)
{
    std::ostringstream ss;
    ss << "scene-v1;" << fmt_g17(scene.origin.latitude_deg) << ","
       << fmt_g17(scene.origin.longitude_deg) << "," << fmt_g17(scene.origin.altitude_m)
       << ";" << fmt_g17(scene.ground.x_min) << "," << fmt_g17(scene.ground.y_min) << ","
       << fmt_g17(scene.ground.x_max) << "," << fmt_g17(scene.ground.y_max) << ","
       << fmt_g17(scene.ground_reflection_loss_db) << ";";
    for (const auto &b : scene.buildings)
    {
        ss << "b:" << fmt_g17(b.height_m) << "," << fmt_g17(b.reflection_loss_db);
        for (const auto &v : b.footprint)
            ss << "," << fmt_g17(v.x()) << "," << fmt_g17(v.y());
        ss << ";";
    }
    return ss.str();
}

bool intersect_face(const Face &f, const Eigen::Vector3d &origin,
                    const Eigen::Vector3d &dir, double t_min, double t_max, double &t_hit)
{
    const double denom = f.normal.dot(dir);
    if (std::abs(denom) < 1e-15)
        return false;
    const double t = (f.plane_d - f.normal.dot(origin)) / denom;
    if (t <= t_min || t >= t_max)
        return false;

    const Eigen::Vector3d p = origin + t * dir;
    switch (f.kind)
    {
    case FaceKind::ground:
        if (p.x() < f.ground_rect.x_min || p.x() > f.ground_rect.x_max ||
            p.y() < f.ground_rect.y_min || p.y() > f.ground_rect.y_max)
            return false;
        break;
    case FaceKind::wall:
    {
        const double s = (p - f.wall_origin).dot(f.wall_edge_dir);
        if (s < 0.0 || s > f.wall_edge_len || p.z() < 0.0 || p.z() > f.wall_height)
            return false;
        break;
    }
    case FaceKind::roof:
        if (!point_in_polygon(Eigen::Vector2d(p.x(), p.y()), f.roof_polygon))
            return false;
        break;
    }
    t_hit = t;
    return true;
}

bool los_clear(const Eigen::Vector3d &a, const Eigen::Vector3d &b, const UrbanScene &scene)
{
    const Eigen::Vector3d d = b - a;
    const double len = d.norm();
    if (len < 1e-12)
        return true;

    for (const auto &f : scene.faces)
    {
        if (f.kind == FaceKind::ground)
            continue;
        double t;
        if (intersect_face(f, a, d, 1e-9, 1.0 - 1e-9, t))
            return false;
    }
    return true;
}

} // namespace satcoex
