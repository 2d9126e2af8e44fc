#include <random>

#include "doctest.h"
#include "trishoot/geom.hpp"

using namespace trishoot;

namespace {

Point3 P(long x, long y, long z) { return Point3(Rat(x), Rat(y), Rat(z)); }
Point3 Pq(Rat x, Rat y, Rat z) { return Point3(std::move(x), std::move(y), std::move(z)); }

Triangle3 tri(Point3 a, Point3 b, Point3 c, int id = 0) {
    Triangle3 t;
    t.id = id;
    t.v = {std::move(a), std::move(b), std::move(c)};
    t.finalize();
    return t;
}

// Unit right triangle in the z=0 plane.
Triangle3 unit_tri() { return tri(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0)); }

std::mt19937_64 rng(0x5eed5eedULL);

Rat rnd_rat() {
    long k = static_cast<long>(rng() & 8191) - 4096;
    return rat_frac(k, 4096);
}

Point3 rnd_point() { return Pq(rnd_rat(), rnd_rat(), rnd_rat()); }

}  // namespace

TEST_CASE("orient3d on the unit basis") {
    CHECK(orient3d(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)) == 1);
    CHECK(orient3d(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, -1)) == -1);
    CHECK(orient3d(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(2, 3, 0)) == 0);
    // Swapping two arguments flips the sign.
    CHECK(orient3d(P(1, 0, 0), P(0, 0, 0), P(0, 1, 0), P(0, 0, 1)) == -1);
}

TEST_CASE("orient3d filtered path agrees with the exact path") {
    for (int i = 0; i < 2000; i++) {
        Point3 p = rnd_point(), q = rnd_point(), r = rnd_point(), s = rnd_point();
        CHECK(orient3d(p, q, r, s) == orient3d_exact(p, q, r, s));
    }
    // Exactly coplanar quadruples (z = x + y plane): the filter must not
    // misreport a sign.
    for (int i = 0; i < 500; i++) {
        auto on_plane = [&]() {
            Rat x = rnd_rat(), y = rnd_rat();
            return Pq(x, y, Rat(x + y));
        };
        Point3 p = on_plane(), q = on_plane(), r = on_plane(), s = on_plane();
        CHECK(orient3d(p, q, r, s) == 0);
    }
}

TEST_CASE("orient3d antisymmetry property") {
    for (int i = 0; i < 2000; i++) {
        Point3 p = rnd_point(), q = rnd_point(), r = rnd_point(), s = rnd_point();
        int o = orient3d(p, q, r, s);
        CHECK(orient3d(q, p, r, s) == -o);
        CHECK(orient3d(p, r, q, s) == -o);
        CHECK(orient3d(p, q, s, r) == -o);
    }
}

TEST_CASE("plane_of evaluates to zero on its defining points") {
    Point3 a = P(1, 2, 3), b = P(-4, 0, 2), c = P(5, 5, -1);
    Plane3 h = plane_of(a, b, c);
    CHECK(h.eval(a) == 0);
    CHECK(h.eval(b) == 0);
    CHECK(h.eval(c) == 0);
    // eval is positive on the right-hand-normal side.
    Point3 d = a + cross(b - a, c - a);
    CHECK(sign(h.eval(d)) == 1);
    CHECK(orient3d(a, b, c, d) == 1);
}

TEST_CASE("seg_plane_intersect crossing, touching, coplanar, missing") {
    Plane3 z0{Vec3(Rat(0), Rat(0), Rat(1)), Rat(0)};
    auto mid = seg_plane_intersect(P(0, 0, 1), P(0, 0, -1), z0);
    REQUIRE(mid.has_value());
    CHECK(!mid->coplanar);
    CHECK(mid->t == Rat(1, 2));

    auto start = seg_plane_intersect(P(2, 3, 0), P(0, 0, 5), z0);
    REQUIRE(start.has_value());
    CHECK(start->t == Rat(0));

    auto end = seg_plane_intersect(P(0, 0, 5), P(2, 3, 0), z0);
    REQUIRE(end.has_value());
    CHECK(end->t == Rat(1));

    auto cop = seg_plane_intersect(P(1, 0, 0), P(0, 1, 0), z0);
    REQUIRE(cop.has_value());
    CHECK(cop->coplanar);

    CHECK(!seg_plane_intersect(P(0, 0, 1), P(0, 0, 2), z0).has_value());
    CHECK(!seg_plane_intersect(P(0, 0, -1), P(5, 5, -3), z0).has_value());
}

TEST_CASE("Triangle3::finalize caches plane, dominant axis, bbox") {
    Triangle3 t = unit_tri();
    CHECK(t.dominant == 2);
    CHECK(t.orient2d_sign == 1);
    CHECK(t.plane.eval(P(0, 0, 0)) == 0);
    CHECK(t.blo[0] <= 0.0);
    CHECK(t.bhi[0] >= 1.0);
    CHECK(t.blo[2] <= 0.0);
    CHECK(t.bhi[2] >= 0.0);

    Triangle3 yz = tri(P(0, 0, 0), P(0, 1, 0), P(0, 0, 1));
    CHECK(yz.dominant == 0);

    Triangle3 bad;
    bad.v = {P(0, 0, 0), P(1, 1, 1), P(2, 2, 2)};
    CHECK_THROWS(bad.finalize());
}

TEST_CASE("seg_tri_intersect: transversal stab hits at the crossing parameter") {
    Triangle3 t = unit_tri();
    auto hit = seg_tri_intersect(Pq(Rat(1, 4), Rat(1, 4), Rat(1)), Pq(Rat(1, 4), Rat(1, 4), Rat(-1)), t);
    REQUIRE(hit.has_value());
    CHECK(*hit == Rat(1, 2));

    // Reversing the segment mirrors the parameter.
    auto rev = seg_tri_intersect(Pq(Rat(1, 4), Rat(1, 4), Rat(-1)), Pq(Rat(1, 4), Rat(1, 4), Rat(1)), t);
    REQUIRE(rev.has_value());
    CHECK(*rev == Rat(1) - *hit);

    // The hit point lies on the triangle.
    Point3 p = point_at(Pq(Rat(1, 4), Rat(1, 4), Rat(1)), Pq(Rat(1, 4), Rat(1, 4), Rat(-1)), *hit);
    CHECK(t.plane.eval(p) == 0);
    CHECK(point_in_triangle(p, t));
}

TEST_CASE("seg_tri_intersect: boundary and endpoint cases") {
    Triangle3 t = unit_tri();

    // Through an edge point (closed triangle includes its boundary).
    auto edge = seg_tri_intersect(Pq(Rat(1, 2), Rat(0), Rat(1)), Pq(Rat(1, 2), Rat(0), Rat(-1)), t);
    REQUIRE(edge.has_value());
    CHECK(*edge == Rat(1, 2));

    // Through a vertex.
    auto vert = seg_tri_intersect(P(0, 0, 1), P(0, 0, -1), t);
    REQUIRE(vert.has_value());
    CHECK(*vert == Rat(1, 2));

    // Endpoint lands exactly on the triangle.
    auto land = seg_tri_intersect(Pq(Rat(1, 4), Rat(1, 4), Rat(1)), Pq(Rat(1, 4), Rat(1, 4), Rat(0)), t);
    REQUIRE(land.has_value());
    CHECK(*land == Rat(1));

    auto leave = seg_tri_intersect(Pq(Rat(1, 4), Rat(1, 4), Rat(0)), Pq(Rat(1, 4), Rat(1, 4), Rat(1)), t);
    REQUIRE(leave.has_value());
    CHECK(*leave == Rat(0));

    // Endpoint on the supporting plane but outside the triangle.
    CHECK(!seg_tri_intersect(P(2, 2, 0), P(2, 2, 1), t).has_value());

    // Crossing the supporting plane outside the triangle.
    CHECK(!seg_tri_intersect(P(2, 2, 1), P(2, 2, -1), t).has_value());
    CHECK(!seg_tri_intersect(P(1, 1, 1), P(1, 1, -1), t).has_value());

    // Stops short of the plane.
    CHECK(!seg_tri_intersect(Pq(Rat(1, 4), Rat(1, 4), Rat(2)), Pq(Rat(1, 4), Rat(1, 4), Rat(1)), t)
               .has_value());
}

TEST_CASE("seg_tri_intersect: coplanar segments report the entry parameter") {
    Triangle3 t = unit_tri();

    // Crosses the x=0 edge at t=1/2.
    auto cross1 = seg_tri_intersect(Pq(Rat(-1), Rat(1, 4), Rat(0)), Pq(Rat(1), Rat(1, 4), Rat(0)), t);
    REQUIRE(cross1.has_value());
    CHECK(*cross1 == Rat(1, 2));

    // Entirely inside: entry at t=0.
    auto inside =
        seg_tri_intersect(Pq(Rat(1, 8), Rat(1, 8), Rat(0)), Pq(Rat(1, 4), Rat(1, 4), Rat(0)), t);
    REQUIRE(inside.has_value());
    CHECK(*inside == Rat(0));

    // Collinear with the y=0 edge, entering at x=0 -> t=1/3.
    auto along = seg_tri_intersect(P(-1, 0, 0), P(2, 0, 0), t);
    REQUIRE(along.has_value());
    CHECK(*along == Rat(1, 3));

    // Coplanar but missing.
    CHECK(!seg_tri_intersect(P(-1, 2, 0), P(1, 2, 0), t).has_value());
    CHECK(!seg_tri_intersect(Pq(Rat(3), Rat(3), Rat(0)), Pq(Rat(4), Rat(3), Rat(0)), t).has_value());

    // Coplanar touching only a vertex.
    auto corner = seg_tri_intersect(P(-1, 1, 0), P(1, -1, 0), t);
    REQUIRE(corner.has_value());
    CHECK(*corner == Rat(1, 2));
}

TEST_CASE("seg_tri_intersect counts one triangle test per call") {
    Triangle3 t = unit_tri();
    QueryStats st;
    seg_tri_intersect(P(0, 0, 1), P(0, 0, -1), t, &st);
    seg_tri_intersect(P(9, 9, 9), P(9, 9, 8), t, &st);
    CHECK(st.tri_tests == 2);
    CHECK(st.primitive_tests() == 2);
}

TEST_CASE("seg_tri_intersect against a brute parameter sweep") {
    // Randomized differential check: compare against an independent
    // evaluation that classifies sample points along the segment.
    std::mt19937_64 g(777);
    auto rr = [&]() { return Rat(static_cast<long>(g() & 1023) - 512, 256); };
    int hits = 0;
    for (int iter = 0; iter < 400; iter++) {
        Triangle3 t;
        t.v = {Pq(rr(), rr(), rr()), Pq(rr(), rr(), rr()), Pq(rr(), rr(), rr())};
        if (cross(t.v[1] - t.v[0], t.v[2] - t.v[0]).is_zero()) continue;
        t.finalize();
        Point3 a = Pq(rr(), rr(), rr()), b = Pq(rr(), rr(), rr());
        if (a == b) continue;
        auto hit = seg_tri_intersect(a, b, t);
        if (hit) {
            hits++;
            CHECK(*hit >= 0);
            CHECK(*hit <= 1);
            CHECK(point_in_triangle(point_at(a, b, *hit), t));
            // No earlier hit: probe a few parameters before it.
            for (int k = 1; k <= 4; k++) {
                Rat tp = *hit * rat_frac(k, 5);
                if (tp == *hit) continue;
                CHECK(!point_in_triangle(point_at(a, b, tp), t));
            }
        } else {
            // Probe points along the segment must all be outside.
            for (int k = 0; k <= 8; k++) {
                CHECK(!point_in_triangle(point_at(a, b, rat_frac(k, 8)), t));
            }
        }
    }
    CHECK(hits > 0);  // the sweep actually exercised the hit path
}

TEST_CASE("point_in_triangle") {
    Triangle3 t = unit_tri();
    CHECK(point_in_triangle(Pq(Rat(1, 4), Rat(1, 4), Rat(0)), t));
    CHECK(point_in_triangle(P(0, 0, 0), t));                       // vertex
    CHECK(point_in_triangle(Pq(Rat(1, 2), Rat(1, 2), Rat(0)), t));  // edge midpoint
    CHECK(!point_in_triangle(P(1, 1, 0), t));
    CHECK(!point_in_triangle(Pq(Rat(1, 4), Rat(1, 4), Rat(1, 100)), t));  // off-plane
}

TEST_CASE("segments_intersect") {
    // Proper crossing in a plane.
    CHECK(segments_intersect(P(0, 0, 0), P(2, 2, 0), P(0, 2, 0), P(2, 0, 0)));
    // Touching at an endpoint.
    CHECK(segments_intersect(P(0, 0, 0), P(1, 0, 0), P(1, 0, 0), P(2, 5, 7)));
    // Collinear overlap / disjoint.
    CHECK(segments_intersect(P(0, 0, 0), P(2, 0, 0), P(1, 0, 0), P(3, 0, 0)));
    CHECK(segments_intersect(P(0, 0, 0), P(1, 0, 0), P(1, 0, 0), P(3, 0, 0)));
    CHECK(!segments_intersect(P(0, 0, 0), P(1, 0, 0), P(2, 0, 0), P(3, 0, 0)));
    // Parallel, not collinear.
    CHECK(!segments_intersect(P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(1, 1, 0)));
    // Coplanar, non-crossing.
    CHECK(!segments_intersect(P(0, 0, 0), P(1, 0, 0), P(2, 1, 0), P(2, -1, 0)));
    // Skew.
    CHECK(!segments_intersect(P(0, 0, 0), P(1, 1, 0), P(0, 1, 1), P(1, 0, 1)));
    // T-junction: endpoint in the middle of the other segment.
    CHECK(segments_intersect(P(0, 0, 0), P(2, 0, 0), P(1, 0, 0), P(1, 5, 0)));
}

TEST_CASE("clip_polygon") {
    std::vector<Point3> sq = {P(0, 0, 0), P(2, 0, 0), P(2, 2, 0), P(0, 2, 0)};
    Plane3 x1{Vec3(Rat(1), Rat(0), Rat(0)), Rat(1)};

    // Keep x <= 1.
    auto left = clip_polygon(sq, x1, 1);
    REQUIRE(left.size() == 4);
    for (const Point3& p : left) CHECK(p.x <= 1);

    // Keep x >= 1.
    auto right = clip_polygon(sq, x1, -1);
    REQUIRE(right.size() == 4);
    for (const Point3& p : right) CHECK(p.x >= 1);

    // Plane missing the square entirely: unchanged or empty.
    Plane3 x9{Vec3(Rat(1), Rat(0), Rat(0)), Rat(9)};
    CHECK(clip_polygon(sq, x9, 1).size() == 4);
    CHECK(clip_polygon(sq, x9, -1).empty());

    // Tangent at an edge: degenerate (2-point) output preserved.
    Plane3 x0{Vec3(Rat(1), Rat(0), Rat(0)), Rat(0)};
    auto edge = clip_polygon(sq, x0, -1);  // keep x >= 0, full square
    CHECK(edge.size() == 4);
    auto edge_only = clip_polygon(sq, x0, 1);  // keep x <= 0: just the left edge
    CHECK(edge_only.size() == 2);

    // Tangent at a vertex: single point.
    Plane3 diag{Vec3(Rat(1), Rat(1), Rat(0)), Rat(0)};
    auto corner = clip_polygon(sq, diag, 1);  // keep x+y <= 0
    CHECK(corner.size() == 1);
    CHECK(corner[0] == P(0, 0, 0));
}

TEST_CASE("three_planes_point") {
    Plane3 x{Vec3(Rat(1), Rat(0), Rat(0)), Rat(1)};
    Plane3 y{Vec3(Rat(0), Rat(1), Rat(0)), Rat(2)};
    Plane3 z{Vec3(Rat(0), Rat(0), Rat(1)), Rat(3)};
    auto p = three_planes_point(x, y, z);
    REQUIRE(p.has_value());
    CHECK(*p == P(1, 2, 3));

    Plane3 x2{Vec3(Rat(2), Rat(0), Rat(0)), Rat(5)};
    CHECK(!three_planes_point(x, x2, y).has_value());

    // Generic planes: the solution satisfies all three equations.
    Plane3 h1 = plane_of(P(1, 0, 0), P(0, 1, 0), P(0, 0, 1));
    Plane3 h2 = plane_of(P(2, 0, 0), P(0, 1, 0), P(0, 0, 3));
    Plane3 h3 = plane_of(P(1, 1, 0), P(0, 5, 1), P(2, 0, 3));
    auto q = three_planes_point(h1, h2, h3);
    REQUIRE(q.has_value());
    CHECK(h1.eval(*q) == 0);
    CHECK(h2.eval(*q) == 0);
    CHECK(h3.eval(*q) == 0);
}

TEST_CASE("hit_before implements the (t, id) tie-break") {
    CHECK(hit_before(Rat(1, 3), 7, Rat(1, 2), 2));
    CHECK(!hit_before(Rat(1, 2), 2, Rat(1, 3), 7));
    CHECK(hit_before(Rat(1, 2), 2, Rat(1, 2), 7));
    CHECK(!hit_before(Rat(1, 2), 7, Rat(1, 2), 2));
    CHECK(!hit_before(Rat(1, 2), 2, Rat(1, 2), 2));
}
