#include "trishoot/oracle.hpp"

#include <algorithm>

namespace trishoot {

std::optional<HitResult> brute_first_hit(const Scene& scene, const Segment3& e,
                                         QueryStats* stats) {
    std::optional<HitResult> best;
    for (const Triangle3& tri : scene.tris) {
        auto t = seg_tri_intersect(e.a, e.b, tri, stats);
        if (!t) continue;
        if (!best || hit_before(*t, tri.id, best->t, best->triangle_id)) {
            best = HitResult{tri.id, *t, point_at(e.a, e.b, *t)};
        }
    }
    return best;
}

std::vector<int> brute_report(const Scene& scene, const Segment3& e, QueryStats* stats) {
    std::vector<int> out;
    for (const Triangle3& tri : scene.tris) {
        if (seg_tri_intersect(e.a, e.b, tri, stats)) out.push_back(tri.id);
    }
    return out;  // scene ids are already ascending
}

std::vector<std::pair<int, int>> brute_line_pairs(const std::vector<Segment3>& red,
                                                  const std::vector<Segment3>& blue) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < red.size(); i++) {
        for (std::size_t j = 0; j < blue.size(); j++) {
            if (segments_intersect(red[i].a, red[i].b, blue[j].a, blue[j].b)) {
                out.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return out;
}

std::vector<Point3> brute_arrangement_vertices(const Scene& scene) {
    std::vector<Point3> pts;
    std::size_t n = scene.tris.size();

    // Edge-triangle crossing points.
    for (std::size_t i = 0; i < n; i++) {
        const Triangle3& ti = scene.tris[i];
        for (std::size_t j = 0; j < n; j++) {
            if (i == j) continue;
            const Triangle3& tj = scene.tris[j];
            for (int ei = 0; ei < 3; ei++) {
                const Point3& a = ti.v[ei];
                const Point3& b = ti.v[(ei + 1) % 3];
                auto t = seg_tri_intersect(a, b, tj, nullptr);
                if (t) pts.push_back(point_at(a, b, *t));
            }
        }
    }

    // Triple points: common point of three supporting planes lying inside
    // all three closed triangles.
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i + 1; j < n; j++) {
            for (std::size_t k = j + 1; k < n; k++) {
                auto p = three_planes_point(scene.tris[i].plane, scene.tris[j].plane,
                                            scene.tris[k].plane);
                if (!p) continue;
                if (point_in_triangle(*p, scene.tris[i]) && point_in_triangle(*p, scene.tris[j]) &&
                    point_in_triangle(*p, scene.tris[k])) {
                    pts.push_back(*p);
                }
            }
        }
    }

    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace trishoot
