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

#include "satcoex/raytrace.hpp"
#include "satcoex/csvio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace satcoex
{

LaunchGrid LaunchGrid::paper()
{
    LaunchGrid g;
    g.elevation_step_deg = 0.5;
    g.azimuth_step_deg = 0.1;
    return g;
}

LaunchGrid LaunchGrid::coarse()
{
    LaunchGrid g;
    g.elevation_step_deg = 2.0;
    g.azimuth_step_deg = 1.0;
    return g;
}

double friis_loss_db(double distance_m, double frequency_hz)
{
    if (distance_m <= 0.0)
        throw std::runtime_error("friis: distance must be > 0");
    return 20.0 * std::log10(4.0 * pi_d * distance_m * frequency_hz / speed_of_light);
}

namespace
{

// Flat BVH over scene faces, median split on the largest centroid axis.
struct BvhNode
{
    Eigen::Vector3d bb_min, bb_max;
    int left = -1, right = -1;
    int first = 0, count = 0; // leaf if count > 0
};

struct Bvh
{
    std::vector<BvhNode> nodes;
    std::vector<int> order; // face indices
    const std::vector<Face> *faces = nullptr;

    void build(const std::vector<Face> &f)
    {
        faces = &f;
        order.resize(f.size());
        for (size_t i = 0; i < f.size(); i++)
            order[i] = (int)i;
        nodes.clear();
        if (!f.empty())
            build_node(0, (int)f.size());
    }

    int build_node(int first, int count)
    {
        const int idx = (int)nodes.size();
        nodes.push_back({});
        Eigen::Vector3d lo = (*faces)[order[first]].bb_min;
        Eigen::Vector3d hi = (*faces)[order[first]].bb_max;
        for (int i = first + 1; i < first + count; i++)
        {
            lo = lo.cwiseMin((*faces)[order[i]].bb_min);
            hi = hi.cwiseMax((*faces)[order[i]].bb_max);
        }
        nodes[idx].bb_min = lo;
        nodes[idx].bb_max = hi;

        if (count <= 4)
        {
            nodes[idx].first = first;
            nodes[idx].count = count;
            return idx;
        }
        const Eigen::Vector3d span = hi - lo;
        int axis = 0;
        if (span.y() > span.x())
            axis = 1;
        if (span.z() > span[axis])
            axis = 2;
        std::sort(order.begin() + first, order.begin() + first + count, [&](int a, int b) {
            const double ca = (*faces)[a].bb_min[axis] + (*faces)[a].bb_max[axis];
            const double cb = (*faces)[b].bb_min[axis] + (*faces)[b].bb_max[axis];
            if (ca != cb)
                return ca < cb;
            return a < b;
        });
        const int half = count / 2;
        const int l = build_node(first, half);
        const int r = build_node(first + half, count - half);
        nodes[idx].left = l;
        nodes[idx].right = r;
        return idx;
    }

    // Nearest face hit with t in (t_min, t_best); returns face index or -1.
    int nearest(const Eigen::Vector3d &o, const Eigen::Vector3d &d, double t_min,
                double &t_best) const
    {
        if (nodes.empty())
            return -1;
        const Eigen::Vector3d invd(1.0 / d.x(), 1.0 / d.y(), 1.0 / d.z());
        int best = -1;
        int stack[64];
        int sp = 0;
        stack[sp++] = 0;
        while (sp > 0)
        {
            const BvhNode &n = nodes[stack[--sp]];
            double t0 = t_min, t1 = t_best;
            bool miss = false;
            for (int a = 0; a < 3 && !miss; a++)
            {
                double lo = (n.bb_min[a] - o[a]) * invd[a];
                double hi = (n.bb_max[a] - o[a]) * invd[a];
                if (invd[a] < 0.0)
                    std::swap(lo, hi);
                t0 = std::max(t0, lo);
                t1 = std::min(t1, hi);
                if (t0 > t1)
                    miss = true;
            }
            if (miss)
                continue;
            if (n.count > 0)
            {
                for (int i = n.first; i < n.first + n.count; i++)
                {
                    const int fi = order[i];
                    double t;
                    if (intersect_face((*faces)[fi], o, d, t_min, t_best, t))
                    {
                        t_best = t;
                        best = fi;
                    }
                }
            }
            else
            {
                stack[sp++] = n.left;
                stack[sp++] = n.right;
            }
        }
        return best;
    }
};

Eigen::Vector3d reflect_dir(const Eigen::Vector3d &d, const Eigen::Vector3d &n)
{
    return d - 2.0 * d.dot(n) * n;
}

Eigen::Vector3d reflect_point(const Eigen::Vector3d &p, const Eigen::Vector3d &n, double pd)
{
    return p - 2.0 * (n.dot(p) - pd) * n;
}

struct Candidate
{
    int ie = 0, ia = 0;
    RayPath ray;
    double specular_err_rad = 0.0;
};

} // namespace

std::vector<RayPath> trace(const UrbanScene &scene, const Eigen::Vector3d &tx_position,
                           const LaunchGrid &grid, const CaptureSphere &capture,
                           double frequency_hz, int max_bounces)
{
    if (max_bounces < 0 || max_bounces > 6)
        throw std::runtime_error("trace: max_bounces must be in [0, 6]");

    Bvh bvh;
    bvh.build(scene.faces);

    const Eigen::Vector3d c_local = scene.ecef_to_local(capture.center);
    const double radius = 0.5 * capture.diameter_m;

    const GeodeticPoint sat_gp = ecef_to_geodetic(capture.center);
    const Eigen::Matrix3d sat_enu = enu_basis(sat_gp.latitude_deg, sat_gp.longitude_deg);

    const int n_el =
        (int)std::llround((grid.elevation_max_deg - grid.elevation_min_deg) /
                          grid.elevation_step_deg) +
        1;
    const double az_span = grid.azimuth_max_deg - grid.azimuth_min_deg;
    const bool full_circle = std::abs(az_span - 360.0) < 1e-9;
    const int n_az = full_circle
                         ? (int)std::llround(az_span / grid.azimuth_step_deg)
                         : (int)std::llround(az_span / grid.azimuth_step_deg) + 1;

    std::map<std::vector<int>, Candidate> families;

    for (int ie = 0; ie < n_el; ie++)
    {
        const double el = grid.elevation_min_deg + ie * grid.elevation_step_deg;
        for (int ia = 0; ia < n_az; ia++)
        {
            const double az = grid.azimuth_min_deg + ia * grid.azimuth_step_deg;
            const Orientation aod{az, el};
            const Eigen::Vector3d d0 = direction_from_angles(aod);

            Eigen::Vector3d pos = tx_position;
            Eigen::Vector3d dir = d0;
            double traveled = 0.0, l_gl = 0.0, l_bl = 0.0;
            int bounces = 0;
            std::vector<int> seq;
            std::vector<Eigen::Vector3d> vertices;
            bool discarded = false;

            for (;;)
            {
                double t_best = 1e18;
                const int fi = bvh.nearest(pos, dir, 1e-6, t_best);
                if (fi < 0)
                    break;
                if (bounces == max_bounces)
                {
                    discarded = true;
                    break;
                }
                const Face &f = scene.faces[fi];
                pos += t_best * dir;
                traveled += t_best;
                dir = reflect_dir(dir, f.normal);
                bounces++;
                seq.push_back(fi);
                vertices.push_back(pos);
                if (f.kind == FaceKind::ground)
                    l_gl += f.reflection_loss_db;
                else
                    l_bl += f.reflection_loss_db;
            }
            if (discarded)
                continue;

            const Eigen::Vector3d w = c_local - pos;
            const double s = w.dot(dir);
            if (s <= 0.0 || (w - s * dir).norm() > radius)
                continue;

            // exact specular direction via the image of the sphere center
            Eigen::Vector3d image = c_local;
            for (auto it = seq.rbegin(); it != seq.rend(); ++it)
            {
                const Face &f = scene.faces[*it];
                image = reflect_point(image, f.normal, f.plane_d);
            }
            const Eigen::Vector3d exact = (image - tx_position).normalized();
            const double err =
                std::acos(std::clamp(d0.dot(exact), -1.0, 1.0));

            Candidate cand;
            cand.ie = ie;
            cand.ia = ia;
            cand.specular_err_rad = err;
            cand.ray.aod = aod;
            cand.ray.bounces = bounces;
            cand.ray.vertices = vertices;
            cand.ray.path_length_m = traveled + w.norm();
            cand.ray.l_fs_db = friis_loss_db(cand.ray.path_length_m, frequency_hz);
            cand.ray.l_gl_db = l_gl;
            cand.ray.l_bl_db = l_bl;
            const Eigen::Vector3d arrival_ecef = scene.enu * dir;
            cand.ray.aoa = angles_from_direction(sat_enu.transpose() * (-arrival_ecef));

            auto [it, inserted] = families.try_emplace(seq, cand);
            if (!inserted && cand.specular_err_rad < it->second.specular_err_rad)
                it->second = cand;
        }
    }

    std::vector<Candidate> winners;
    winners.reserve(families.size());
    for (auto &kv : families)
        winners.push_back(std::move(kv.second));
    std::sort(winners.begin(), winners.end(), [](const Candidate &a, const Candidate &b) {
        if (a.ie != b.ie)
            return a.ie < b.ie;
        return a.ia < b.ia;
    });

    std::vector<RayPath> rays;
    rays.reserve(winners.size());
    for (auto &wn : winners)
        rays.push_back(std::move(wn.ray));
    return rays;
}

std::string rays_to_csv(const std::vector<RayPath> &rays)
{
    std::ostringstream ss;
    ss << "aod_theta_deg,aod_phi_deg,aoa_theta_deg,aoa_phi_deg,bounces,path_m,l_fs_db,"
          "l_gl_db,l_bl_db\n";
    for (const auto &r : rays)
        ss << fmt_g17(r.aod.theta_deg) << "," << fmt_g17(r.aod.phi_deg) << ","
           << fmt_g17(r.aoa.theta_deg) << "," << fmt_g17(r.aoa.phi_deg) << "," << r.bounces
           << "," << fmt_g17(r.path_length_m) << "," << fmt_g17(r.l_fs_db) << ","
           << fmt_g17(r.l_gl_db) << "," << fmt_g17(r.l_bl_db) << "\n";
    return ss.str();
}

std::vector<RayPath> rays_from_csv(const std::string &content)
{
    std::istringstream in(content);
    std::string line;
    std::vector<RayPath> rays;
    bool header = true;
    while (std::getline(in, line))
    {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (header)
        {
            header = false;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 9)
            throw std::runtime_error("ray csv: row needs 9 fields");
        RayPath r;
        r.aod.theta_deg = to_double(f[0]);
        r.aod.phi_deg = to_double(f[1]);
        r.aoa.theta_deg = to_double(f[2]);
        r.aoa.phi_deg = to_double(f[3]);
        r.bounces = (int)to_double(f[4]);
        r.path_length_m = to_double(f[5]);
        r.l_fs_db = to_double(f[6]);
        r.l_gl_db = to_double(f[7]);
        r.l_bl_db = to_double(f[8]);
        rays.push_back(std::move(r));
    }
    return rays;
}

void write_rays_csv(const std::vector<RayPath> &rays, const std::string &path)
{
    atomic_write_file(path, rays_to_csv(rays));
}

} // namespace satcoex
