#include "trishoot/geom.hpp"

#include <algorithm>
#include <stdexcept>

namespace trishoot {

namespace {

inline Fv coord(double a) { return fv_approx(a); }

// Projected 2D coordinates for dominant-axis projection: axis k is dropped
// cyclically, (u, v) = (coords[k+1], coords[k+2]).
inline int nxt(int k) { return k == 2 ? 0 : k + 1; }

inline const Rat& comp(const Point3& p, int k) { return k == 0 ? p.x : (k == 1 ? p.y : p.z); }
inline double acomp(const Point3& p, int k) { return k == 0 ? p.ax : (k == 1 ? p.ay : p.az); }

int orient2d_proj_exact(const Point3& p, const Point3& q, const Point3& r, int axis) {
    int u = nxt(axis), v = nxt(u);
    Rat d = (comp(q, u) - comp(p, u)) * (comp(r, v) - comp(p, v)) -
            (comp(q, v) - comp(p, v)) * (comp(r, u) - comp(p, u));
    return sign(d);
}

int orient2d_proj(const Point3& p, const Point3& q, const Point3& r, int axis) {
    int u = nxt(axis), v = nxt(u);
    Fv d = (coord(acomp(q, u)) - coord(acomp(p, u))) * (coord(acomp(r, v)) - coord(acomp(p, v))) -
           (coord(acomp(q, v)) - coord(acomp(p, v))) * (coord(acomp(r, u)) - coord(acomp(p, u)));
    int s = fv_sign(d);
    if (s != kFilterUnsure) return s;
    return orient2d_proj_exact(p, q, r, axis);
}

// p inside the closed projected triangle; the triangle's projected
// orientation sign is passed in (never 0 for valid triangles).
bool point_in_tri_proj(const Point3& p, const Triangle3& tri) {
    int axis = tri.dominant, o = tri.orient2d_sign;
    for (int i = 0; i < 3; i++) {
        if (o * orient2d_proj(tri.v[i], tri.v[(i + 1) % 3], p, axis) < 0) return false;
    }
    return true;
}

}  // namespace

int orient3d_exact(const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
    Rat ax = q.x - p.x, ay = q.y - p.y, az = q.z - p.z;
    Rat bx = r.x - p.x, by = r.y - p.y, bz = r.z - p.z;
    Rat cx = s.x - p.x, cy = s.y - p.y, cz = s.z - p.z;
    Rat det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
    return sign(det);
}

int orient3d(const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
    Fv ax = coord(q.ax) - coord(p.ax), ay = coord(q.ay) - coord(p.ay),
       az = coord(q.az) - coord(p.az);
    Fv bx = coord(r.ax) - coord(p.ax), by = coord(r.ay) - coord(p.ay),
       bz = coord(r.az) - coord(p.az);
    Fv cx = coord(s.ax) - coord(p.ax), cy = coord(s.ay) - coord(p.ay),
       cz = coord(s.az) - coord(p.az);
    Fv det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
    int s0 = fv_sign(det);
    if (s0 != kFilterUnsure) return s0;
    return orient3d_exact(p, q, r, s);
}

Plane3 plane_of(const Point3& a, const Point3& b, const Point3& c) {
    Vec3 n = cross(b - a, c - a);
    Rat off = dot(n, a - Point3());
    return {n, off};
}

void Triangle3::finalize() {
    plane = plane_of(v[0], v[1], v[2]);
    if (plane.n.is_zero()) throw std::invalid_argument("Triangle3: collinear vertices");

    Rat nx = rat_abs(plane.n.x), ny = rat_abs(plane.n.y), nz = rat_abs(plane.n.z);
    if (nx >= ny && nx >= nz)
        dominant = 0;
    else if (ny >= nz)
        dominant = 1;
    else
        dominant = 2;
    orient2d_sign = orient2d_proj_exact(v[0], v[1], v[2], dominant);
    if (orient2d_sign == 0) throw std::logic_error("Triangle3: degenerate projection");

    for (int k = 0; k < 3; k++) {
        double lo = 1e300, hi = -1e300;
        for (const Point3& p : v) {
            double a = acomp(p, k);
            double err = std::fabs(a) * kApproxRelErr + kApproxAbsErr;
            lo = std::min(lo, a - err);
            hi = std::max(hi, a + err);
        }
        blo[k] = lo;
        bhi[k] = hi;
    }
}

std::optional<SegPlaneHit> seg_plane_intersect(const Point3& a, const Point3& b, const Plane3& h) {
    Rat fa = h.eval(a);
    Rat fb = h.eval(b);
    int sa = sign(fa), sb = sign(fb);
    if (sa == 0 && sb == 0) return SegPlaneHit{true, Rat(0)};
    if (sa == sb) return std::nullopt;  // same strict side
    if (sa != 0 && sb != 0 && sa == -sb) return SegPlaneHit{false, Rat(fa / (fa - fb))};
    if (sa == 0) return SegPlaneHit{false, Rat(0)};
    if (sb == 0) return SegPlaneHit{false, Rat(1)};
    // sa, sb nonzero same sign is handled above; remaining combos impossible
    return std::nullopt;
}

std::optional<Rat> seg_tri_intersect(const Point3& a, const Point3& b, const Triangle3& tri,
                                     QueryStats* stats) {
    if (stats) stats->tri_tests++;

    // Conservative double bbox reject.
    for (int k = 0; k < 3; k++) {
        double pa = acomp(a, k), pb = acomp(b, k);
        double ea = std::fabs(pa) * kApproxRelErr + kApproxAbsErr;
        double eb = std::fabs(pb) * kApproxRelErr + kApproxAbsErr;
        double lo = std::min(pa - ea, pb - eb), hi = std::max(pa + ea, pb + eb);
        if (hi < tri.blo[k] || lo > tri.bhi[k]) return std::nullopt;
    }

    int s1 = orient3d(tri.v[0], tri.v[1], tri.v[2], a);
    int s2 = orient3d(tri.v[0], tri.v[1], tri.v[2], b);
    if (s1 == s2 && s1 != 0) return std::nullopt;

    if (s1 == 0 && s2 == 0) {
        // Coplanar: clip the segment's parameter interval by the three edge
        // halfplanes in the dominant projection; report the entry parameter.
        int axis = tri.dominant, u = nxt(axis), v = nxt(u);
        Rat lo(0), hi(1);
        for (int i = 0; i < 3; i++) {
            const Point3& p = tri.v[i];
            const Point3& q = tri.v[(i + 1) % 3];
            Rat eu = comp(q, u) - comp(p, u), ev = comp(q, v) - comp(p, v);
            // f(t) = cross(q-p, seg(t)-p), sign adjusted so inside is >= 0
            Rat f0 = eu * (comp(a, v) - comp(p, v)) - ev * (comp(a, u) - comp(p, u));
            Rat f1 = eu * (comp(b, v) - comp(p, v)) - ev * (comp(b, u) - comp(p, u));
            if (tri.orient2d_sign < 0) {
                f0 = -f0;
                f1 = -f1;
            }
            Rat d = f1 - f0;
            if (d == 0) {
                if (f0 < 0) return std::nullopt;
                continue;
            }
            Rat t = -f0 / d;
            if (d > 0) {
                if (t > lo) lo = t;
            } else {
                if (t < hi) hi = t;
            }
            if (lo > hi) return std::nullopt;
        }
        return lo;
    }

    if (s1 == 0 || s2 == 0) {
        // One endpoint on the supporting plane: that endpoint is the only
        // candidate.
        if (s1 == 0) {
            if (point_in_tri_proj(a, tri)) return Rat(0);
            return std::nullopt;
        }
        if (point_in_tri_proj(b, tri)) return Rat(1);
        return std::nullopt;
    }

    // Strict crossing: side tests of the segment line against the edges.
    int e0 = orient3d(a, b, tri.v[0], tri.v[1]);
    int e1 = orient3d(a, b, tri.v[1], tri.v[2]);
    int e2 = orient3d(a, b, tri.v[2], tri.v[0]);
    bool inside = s1 > 0 ? (e0 <= 0 && e1 <= 0 && e2 <= 0) : (e0 >= 0 && e1 >= 0 && e2 >= 0);
    if (!inside) return std::nullopt;

    Rat d1 = tri.plane.eval(a);
    Rat d2 = tri.plane.eval(b);
    return Rat(d1 / (d1 - d2));
}

bool point_in_triangle(const Point3& p, const Triangle3& tri) {
    if (orient3d(tri.v[0], tri.v[1], tri.v[2], p) != 0) return false;
    return point_in_tri_proj(p, tri);
}

bool segments_intersect(const Point3& p1, const Point3& q1, const Point3& p2, const Point3& q2) {
    int o = orient3d(p1, q1, p2, q2);
    if (o != 0) return false;  // skew

    Vec3 d1 = q1 - p1, d2 = q2 - p2;
    Vec3 n = cross(d1, d2);
    if (!n.is_zero()) {
        // Coplanar, non-parallel: solve for the line crossing and check both
        // parameters. p1 + t d1 = p2 + s d2; use the cross-product trick.
        Vec3 w = p2 - p1;
        Rat nn = dot(n, n);
        Rat t = dot(cross(w, d2), n) / nn;
        Rat s = dot(cross(w, d1), n) / nn;
        return t >= 0 && t <= 1 && s >= 0 && s <= 1;
    }

    // Parallel: must be collinear to touch.
    if (!cross(d1, p2 - p1).is_zero()) return false;
    // Project onto the largest component of d1 and compare intervals.
    Rat axv = rat_abs(d1.x), ayv = rat_abs(d1.y), azv = rat_abs(d1.z);
    int k = (axv >= ayv && axv >= azv) ? 0 : (ayv >= azv ? 1 : 2);
    Rat a0 = comp(p1, k), a1 = comp(q1, k);
    Rat b0 = comp(p2, k), b1 = comp(q2, k);
    if (a0 > a1) std::swap(a0, a1);
    if (b0 > b1) std::swap(b0, b1);
    return std::max(a0, b0) <= std::min(a1, b1);
}

std::vector<Point3> clip_polygon(const std::vector<Point3>& poly, const Plane3& h, int side) {
    if (poly.empty()) return {};
    std::vector<Point3> out;
    out.reserve(poly.size() + 2);
    std::size_t n = poly.size();
    std::vector<Rat> f(n);
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; i++) {
        f[i] = Rat(side) * h.eval(poly[i]);
        s[i] = sign(f[i]);
    }
    for (std::size_t i = 0; i < n; i++) {
        std::size_t j = (i + 1) % n;
        if (s[i] <= 0) out.push_back(poly[i]);
        if ((s[i] < 0 && s[j] > 0) || (s[i] > 0 && s[j] < 0)) {
            Rat t = f[i] / (f[i] - f[j]);
            out.push_back(point_at(poly[i], poly[j], t));
        }
    }
    // Collapse consecutive duplicates introduced by vertices on the plane.
    std::vector<Point3> dedup;
    for (const Point3& p : out) {
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    }
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

std::optional<Point3> three_planes_point(const Plane3& h1, const Plane3& h2, const Plane3& h3) {
    const Vec3 &n1 = h1.n, &n2 = h2.n, &n3 = h3.n;
    Rat det = n1.x * (n2.y * n3.z - n2.z * n3.y) - n1.y * (n2.x * n3.z - n2.z * n3.x) +
              n1.z * (n2.x * n3.y - n2.y * n3.x);
    if (det == 0) return std::nullopt;
    // Cramer's rule, columns replaced by the offsets.
    Rat dx = h1.off * (n2.y * n3.z - n2.z * n3.y) - n1.y * (h2.off * n3.z - n2.z * h3.off) +
             n1.z * (h2.off * n3.y - n2.y * h3.off);
    Rat dy = n1.x * (h2.off * n3.z - n2.z * h3.off) - h1.off * (n2.x * n3.z - n2.z * n3.x) +
             n1.z * (n2.x * h3.off - h2.off * n3.x);
    Rat dz = n1.x * (n2.y * h3.off - h2.off * n3.y) - n1.y * (n2.x * h3.off - h2.off * n3.x) +
             h1.off * (n2.x * n3.y - n2.y * n3.x);
    return Point3(Rat(dx / det), Rat(dy / det), Rat(dz / det));
}

}  // namespace trishoot
