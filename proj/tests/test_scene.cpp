#include <fstream>
#include <sstream>

#include "doctest.h"
#include "trishoot/scene.hpp"
#include "trishoot/scene_gen.hpp"

using namespace trishoot;

TEST_CASE("TSOUP save/load round-trips exactly") {
    SceneSpec spec;
    spec.kind = "random-uniform";
    spec.n = 20;
    spec.size = Rat(3, 2);
    spec.seed = 7;
    Scene sc = generate_scene(spec);

    std::ostringstream out;
    save_scene(out, sc);
    std::istringstream in(out.str());
    Scene rt = load_scene(in);

    REQUIRE(rt.size() == sc.size());
    for (std::size_t i = 0; i < sc.size(); i++) {
        CHECK(rt.tris[i].id == static_cast<int>(i));
        for (int v = 0; v < 3; v++) CHECK(rt.tris[i].v[v] == sc.tris[i].v[v]);
    }
    for (int k = 0; k < 3; k++) {
        CHECK(rt.bbox.lo[k] == sc.bbox.lo[k]);
        CHECK(rt.bbox.hi[k] == sc.bbox.hi[k]);
    }
}

TEST_CASE("bbox strictly contains every vertex (one-unit inflation)") {
    SceneSpec spec;
    spec.n = 30;
    spec.seed = 11;
    Scene sc = generate_scene(spec);
    for (const Triangle3& t : sc.tris)
        for (const Point3& p : t.v) CHECK(sc.bbox.strictly_contains(p));
}

TEST_CASE("generator determinism: same spec, byte-identical output") {
    SceneSpec spec;
    spec.kind = "clustered";
    spec.n = 25;
    spec.seed = 99;
    std::ostringstream a, b;
    save_scene(a, generate_scene(spec));
    save_scene(b, generate_scene(spec));
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
}

TEST_CASE("stacked-sheets produces n parallel horizontal triangles") {
    SceneSpec spec;
    spec.kind = "stacked-sheets";
    spec.n = 5;
    Scene sc = generate_scene(spec);
    REQUIRE(sc.size() == 5);
    for (const Triangle3& t : sc.tris) {
        CHECK(t.v[0].z == t.v[1].z);
        CHECK(t.v[0].z == t.v[2].z);
    }
    for (std::size_t i = 1; i < 5; i++) CHECK(sc.tris[i - 1].v[0].z < sc.tris[i].v[0].z);
}

TEST_CASE("OFF load fan-triangulates faces") {
    const char* off =
        "OFF\n"
        "# unit quad plus a triangle\n"
        "5 2 0\n"
        "0 0 0\n"
        "1 0 0\n"
        "1 1 0\n"
        "0 1 0\n"
        "0 0 1\n"
        "4 0 1 2 3\n"
        "3 0 1 4\n";
    std::istringstream in(off);
    Scene sc = load_scene(in);
    REQUIRE(sc.size() == 3);  // quad -> 2 triangles, plus 1
    CHECK(sc.tris[0].v[0] == Point3(Rat(0), Rat(0), Rat(0)));
    CHECK(sc.tris[2].v[2] == Point3(Rat(0), Rat(0), Rat(1)));
}

TEST_CASE("mesh-file scene kind proxies the loader") {
    const char* path = "tmp_meshfile_test.off";
    {
        std::ofstream f(path);
        f << "OFF\n4 2 0\n0 0 0\n2 0 0\n2 2 0\n0 2 0\n3 0 1 2\n3 0 2 3\n";
    }
    SceneSpec spec;
    spec.kind = "mesh-file";
    spec.mesh_path = path;
    Scene sc = generate_scene(spec);
    CHECK(sc.size() == 2);
}

TEST_CASE("clip_ray_to_box") {
    Box3 box;
    for (int k = 0; k < 3; k++) {
        box.lo[k] = Rat(0);
        box.hi[k] = Rat(10);
    }
    // Axis ray from the interior.
    Ray3 r1{Point3(Rat(5), Rat(5), Rat(5)), Vec3(Rat(1), Rat(0), Rat(0))};
    Segment3 s1 = clip_ray_to_box(r1, box);
    CHECK(s1.a == r1.origin);
    CHECK(s1.b == Point3(Rat(10), Rat(5), Rat(5)));

    // Diagonal ray exits through the nearest face.
    Ray3 r2{Point3(Rat(9), Rat(5), Rat(5)), Vec3(Rat(1), Rat(2), Rat(0))};
    Segment3 s2 = clip_ray_to_box(r2, box);
    CHECK(s2.a == r2.origin);
    CHECK(s2.b == Point3(Rat(10), Rat(7), Rat(5)));

    // Ray starting outside and entering.
    Ray3 r3{Point3(Rat(-5), Rat(5), Rat(5)), Vec3(Rat(1), Rat(0), Rat(0))};
    Segment3 s3 = clip_ray_to_box(r3, box);
    CHECK(s3.a == Point3(Rat(0), Rat(5), Rat(5)));
    CHECK(s3.b == Point3(Rat(10), Rat(5), Rat(5)));

    // Ray missing the box entirely: degenerate marker segment.
    Ray3 r4{Point3(Rat(-5), Rat(5), Rat(5)), Vec3(Rat(-1), Rat(0), Rat(0))};
    Segment3 s4 = clip_ray_to_box(r4, box);
    CHECK(s4.degenerate());
}

TEST_CASE("query generators are deterministic and in-box") {
    Box3 box;
    for (int k = 0; k < 3; k++) {
        box.lo[k] = Rat(-2);
        box.hi[k] = Rat(3);
    }
    auto r1 = generate_rays(50, box, 5);
    auto r2 = generate_rays(50, box, 5);
    REQUIRE(r1.size() == 50);
    for (std::size_t i = 0; i < 50; i++) {
        CHECK(r1[i].origin == r2[i].origin);
        CHECK(r1[i].dir == r2[i].dir);
        CHECK(box.contains(r1[i].origin));
        CHECK(!r1[i].dir.is_zero());
    }
    auto s1 = generate_segments(50, box, 6);
    for (const Segment3& s : s1) {
        CHECK(box.contains(s.a));
        CHECK(box.contains(s.b));
        CHECK(!s.degenerate());
    }
    auto stabs = generate_stabs(10, box, 7);
    for (const Segment3& s : stabs) {
        CHECK(s.a.z == box.hi[2]);
        CHECK(s.b.z == box.lo[2]);
    }
}
