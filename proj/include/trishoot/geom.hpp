#pragma once

#include <array>
#include <optional>
#include <vector>

#include "trishoot/counters.hpp"
#include "trishoot/filter.hpp"
#include "trishoot/rational.hpp"

namespace trishoot {

struct Vec3 {
    Rat x, y, z;

    Vec3() : x(0), y(0), z(0) {}
    Vec3(Rat x_, Rat y_, Rat z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    bool is_zero() const { return x == 0 && y == 0 && z == 0; }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {Rat(a.x + b.x), Rat(a.y + b.y), Rat(a.z + b.z)};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {Rat(a.x - b.x), Rat(a.y - b.y), Rat(a.z - b.z)};
}
inline Vec3 operator*(const Rat& s, const Vec3& v) {
    return {Rat(s * v.x), Rat(s * v.y), Rat(s * v.z)};
}
inline Vec3 operator-(const Vec3& v) { return {Rat(-v.x), Rat(-v.y), Rat(-v.z)}; }
inline Rat dot(const Vec3& a, const Vec3& b) { return Rat(a.x * b.x + a.y * b.y + a.z * b.z); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {Rat(a.y * b.z - a.z * b.y), Rat(a.z * b.x - a.x * b.z), Rat(a.x * b.y - a.y * b.x)};
}
inline bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
}

// Exact rational point with a cached double approximation for the filters.
struct Point3 {
    Rat x, y, z;
    double ax = 0, ay = 0, az = 0;

    Point3() : x(0), y(0), z(0) {}
    Point3(Rat x_, Rat y_, Rat z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
        refresh_approx();
    }
    void refresh_approx() {
        ax = to_double(x);
        ay = to_double(y);
        az = to_double(z);
    }
};

inline Vec3 operator-(const Point3& a, const Point3& b) {
    return {Rat(a.x - b.x), Rat(a.y - b.y), Rat(a.z - b.z)};
}
inline Point3 operator+(const Point3& p, const Vec3& v) {
    return {Rat(p.x + v.x), Rat(p.y + v.y), Rat(p.z + v.z)};
}
inline bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
}
inline bool operator!=(const Point3& a, const Point3& b) { return !(a == b); }

// Lexicographic, for canonical sorting/dedup of exact points.
inline bool lex_less(const Point3& a, const Point3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

struct Segment3 {
    Point3 a, b;
    bool degenerate() const { return a == b; }
};

struct Ray3 {
    Point3 origin;
    Vec3 dir;
};

// The set { x : dot(n, x) = off }. n need not be normalized.
struct Plane3 {
    Vec3 n;
    Rat off;

    Rat eval(const Point3& p) const { return Rat(dot(n, p - Point3()) - off); }
};

inline bool operator==(const Plane3& a, const Plane3& b) { return a.n == b.n && a.off == b.off; }

struct Triangle3 {
    int id = -1;
    std::array<Point3, 3> v;

    // Caches, filled by finalize(): supporting plane, the coordinate axis the
    // normal is largest along (for 2D projection), conservative double bbox.
    Plane3 plane;
    int dominant = 2;
    int orient2d_sign = 1;  // orientation of the projected triangle
    double blo[3] = {0, 0, 0}, bhi[3] = {0, 0, 0};

    void finalize();
};

struct HitResult {
    int triangle_id = -1;
    Rat t;
    Point3 point;
};

// (t, id)-lexicographic "earlier hit" order; ties on t resolved toward the
// smallest triangle id, matching the oracle.
inline bool hit_before(const Rat& t1, int id1, const Rat& t2, int id2) {
    int c = sign(Rat(t1 - t2));
    if (c != 0) return c < 0;
    return id1 < id2;
}

inline Point3 point_at(const Point3& a, const Point3& b, const Rat& t) {
    return {Rat(a.x + t * (b.x - a.x)), Rat(a.y + t * (b.y - a.y)), Rat(a.z + t * (b.z - a.z))};
}

// ---- Exact predicates (filtered fast path, rational fallback) ----

// Sign of det(q-p, r-p, s-p): +1 when s is on the side of plane(p,q,r) the
// right-hand normal points to.
int orient3d(const Point3& p, const Point3& q, const Point3& r, const Point3& s);
int orient3d_exact(const Point3& p, const Point3& q, const Point3& r, const Point3& s);

struct SegPlaneHit {
    bool coplanar = false;
    Rat t;  // meaningful when !coplanar
};

// Intersection of segment ab with a plane: the crossing parameter, the
// distinguished coplanar value, or nothing.
std::optional<SegPlaneHit> seg_plane_intersect(const Point3& a, const Point3& b, const Plane3& h);

// Smallest t in [0,1] with a+t(b-a) in the closed triangle; coplanar overlap
// reports the entry parameter. Counts one triangle test on stats.
std::optional<Rat> seg_tri_intersect(const Point3& a, const Point3& b, const Triangle3& tri,
                                     QueryStats* stats = nullptr);

// p in the closed triangle (includes the coplanarity check).
bool point_in_triangle(const Point3& p, const Triangle3& tri);

// Closed segments in 3D share at least one point.
bool segments_intersect(const Point3& p1, const Point3& q1, const Point3& p2, const Point3& q2);

// Exact plane from a triangle's vertices (right-hand normal).
Plane3 plane_of(const Point3& a, const Point3& b, const Point3& c);

// Convex polygon clipping by the halfspace side*(dot(n,x)-off) <= 0.
// Degenerate outputs (segment/point) are legitimate and preserved.
std::vector<Point3> clip_polygon(const std::vector<Point3>& poly, const Plane3& h, int side);

// Solves the 3x3 system given by three planes; nullopt when singular.
std::optional<Point3> three_planes_point(const Plane3& h1, const Plane3& h2, const Plane3& h3);

}  // namespace trishoot
