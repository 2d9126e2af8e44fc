#include "trishoot/scene_gen.hpp"

#include <random>
#include <stdexcept>

namespace trishoot {

namespace {

// Dyadic fraction in [0, 1): k/4096 from the low bits of one draw.
Rat unit_frac(std::mt19937_64& g) { return rat_frac(static_cast<long>(g() & 4095), 4096); }

// Dyadic fraction in [-1/2, 1/2).
Rat centered_frac(std::mt19937_64& g) {
    return rat_frac(static_cast<long>(g() & 4095) - 2048, 4096);
}

Point3 box_point(std::mt19937_64& g, const Rat& span) {
    return Point3(Rat(span * unit_frac(g)), Rat(span * unit_frac(g)), Rat(span * unit_frac(g)));
}

Triangle3 small_triangle_at(std::mt19937_64& g, const Point3& c, const Rat& size) {
    Triangle3 t;
    while (true) {
        for (int v = 0; v < 3; v++) {
            t.v[v] = Point3(Rat(c.x + size * centered_frac(g)), Rat(c.y + size * centered_frac(g)),
                            Rat(c.z + size * centered_frac(g)));
        }
        if (!cross(t.v[1] - t.v[0], t.v[2] - t.v[0]).is_zero()) return t;
    }
}

Scene gen_random_uniform(const SceneSpec& spec) {
    std::mt19937_64 g(spec.seed);
    Rat span(10);
    Scene sc;
    sc.tris.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; i++) {
        Point3 c = box_point(g, span);
        sc.tris.push_back(small_triangle_at(g, c, spec.size));
    }
    sc.finalize();
    return sc;
}

Scene gen_stacked_sheets(const SceneSpec& spec) {
    Scene sc;
    sc.tris.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; i++) {
        // Heights strictly inside (0, 10); the footprint strictly covers
        // [0,10]^2 so any vertical stab over the unit box crosses every sheet.
        Rat h(Rat(10) * rat_frac(static_cast<long>(i) + 1, static_cast<long>(spec.n) + 1));
        Triangle3 t;
        t.v = {Point3(Rat(-20), Rat(-20), h), Point3(Rat(50), Rat(-20), h),
               Point3(Rat(-20), Rat(50), h)};
        sc.tris.push_back(std::move(t));
    }
    sc.finalize();
    return sc;
}

Scene gen_clustered(const SceneSpec& spec) {
    std::mt19937_64 g(spec.seed);
    std::size_t m = isqrt_ulong(spec.n);
    if (m == 0) m = 1;
    std::vector<Point3> centers;
    centers.reserve(m);
    for (std::size_t i = 0; i < m; i++) {
        centers.push_back(Point3(Rat(Rat(1) + Rat(8) * unit_frac(g)),
                                 Rat(Rat(1) + Rat(8) * unit_frac(g)),
                                 Rat(Rat(1) + Rat(8) * unit_frac(g))));
    }
    Scene sc;
    sc.tris.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; i++) {
        sc.tris.push_back(small_triangle_at(g, centers[i % m], spec.size));
    }
    sc.finalize();
    return sc;
}

}  // namespace

Scene generate_scene(const SceneSpec& spec) {
    if (spec.kind == "random-uniform") return gen_random_uniform(spec);
    if (spec.kind == "stacked-sheets") return gen_stacked_sheets(spec);
    if (spec.kind == "clustered") return gen_clustered(spec);
    if (spec.kind == "mesh-file") return load_scene_file(spec.mesh_path);
    throw std::runtime_error("generate_scene: unknown kind '" + spec.kind + "'");
}

std::vector<Ray3> generate_rays(std::size_t count, const Box3& box, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<Ray3> out;
    out.reserve(count);
    Rat ext[3];
    for (int k = 0; k < 3; k++) ext[k] = Rat(box.hi[k] - box.lo[k]);
    while (out.size() < count) {
        Point3 o(Rat(box.lo[0] + ext[0] * unit_frac(g)), Rat(box.lo[1] + ext[1] * unit_frac(g)),
                 Rat(box.lo[2] + ext[2] * unit_frac(g)));
        Vec3 d(centered_frac(g), centered_frac(g), centered_frac(g));
        if (d.is_zero()) continue;
        out.push_back({o, d});
    }
    return out;
}

std::vector<Segment3> generate_segments(std::size_t count, const Box3& box, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<Segment3> out;
    out.reserve(count);
    Rat ext[3];
    for (int k = 0; k < 3; k++) ext[k] = Rat(box.hi[k] - box.lo[k]);
    auto pick = [&]() {
        return Point3(Rat(box.lo[0] + ext[0] * unit_frac(g)), Rat(box.lo[1] + ext[1] * unit_frac(g)),
                      Rat(box.lo[2] + ext[2] * unit_frac(g)));
    };
    while (out.size() < count) {
        Point3 a = pick(), b = pick();
        if (a == b) continue;
        out.push_back({a, b});
    }
    return out;
}

std::vector<Segment3> generate_stabs(std::size_t count, const Box3& box, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<Segment3> out;
    out.reserve(count);
    Rat ex(box.hi[0] - box.lo[0]), ey(box.hi[1] - box.lo[1]);
    for (std::size_t i = 0; i < count; i++) {
        Rat x(box.lo[0] + ex * unit_frac(g)), y(box.lo[1] + ey * unit_frac(g));
        out.push_back({Point3(x, y, box.hi[2]), Point3(x, y, box.lo[2])});
    }
    return out;
}

}  // namespace trishoot
