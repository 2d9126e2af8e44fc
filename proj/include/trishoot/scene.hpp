#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trishoot/geom.hpp"

namespace trishoot {

// Axis-aligned box, closed.
struct Box3 {
    Rat lo[3] = {Rat(0), Rat(0), Rat(0)};
    Rat hi[3] = {Rat(0), Rat(0), Rat(0)};

    bool contains(const Point3& p) const {
        return p.x >= lo[0] && p.x <= hi[0] && p.y >= lo[1] && p.y <= hi[1] && p.z >= lo[2] &&
               p.z <= hi[2];
    }
    bool strictly_contains(const Point3& p) const {
        return p.x > lo[0] && p.x < hi[0] && p.y > lo[1] && p.y < hi[1] && p.z > lo[2] &&
               p.z < hi[2];
    }
    Point3 center() const {
        return Point3(Rat((lo[0] + hi[0]) / 2), Rat((lo[1] + hi[1]) / 2),
                      Rat((lo[2] + hi[2]) / 2));
    }
};

// Triangle soup plus the enclosing query box B0 (tight hull inflated by one
// unit on every side, so all vertices are strictly interior).
struct Scene {
    std::vector<Triangle3> tris;
    Box3 bbox;

    // Assigns sequential ids, finalizes triangle caches, recomputes bbox.
    void finalize();

    std::size_t size() const { return tris.size(); }
};

// Text formats:
//   - native soup: "TSOUP" header, count line, then 9 rationals per line;
//   - OFF meshes ("OFF" header): faces are fan-triangulated on load.
// Coordinates are parsed exactly (integers, decimals, or p/q).
Scene load_scene(std::istream& in);
Scene load_scene_file(const std::string& path);
void save_scene(std::ostream& out, const Scene& scene);
void save_scene_file(const std::string& path, const Scene& scene);

// Clips a ray to B0 and returns it as a segment starting at the ray origin
// (rays are assumed to start inside B0; the origin is clamped otherwise).
Segment3 clip_ray_to_box(const Ray3& ray, const Box3& box);

}  // namespace trishoot
