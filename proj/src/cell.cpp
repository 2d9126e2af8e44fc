#include "trishoot/cell.hpp"

#include <algorithm>
#include <stdexcept>

namespace trishoot {

int Cell::side_of(const Point3& p) const {
    bool boundary = false;
    for (const CellFace& f : faces) {
        int s = sign(Rat(Rat(f.side) * f.plane.eval(p)));
        if (s > 0) return -1;
        if (s == 0) boundary = true;
    }
    return boundary ? 0 : 1;
}

std::optional<std::pair<Rat, Rat>> Cell::clip_segment(const Point3& a, const Point3& b) const {
    Rat lo(0), hi(1);
    for (const CellFace& f : faces) {
        Rat f0(Rat(f.side) * f.plane.eval(a));
        Rat f1(Rat(f.side) * f.plane.eval(b));
        Rat d(f1 - f0);
        if (d == 0) {
            if (f0 > 0) return std::nullopt;
            continue;
        }
        Rat t(-f0 / d);
        if (d > 0) {
            if (t < hi) hi = t;
        } else {
            if (t > lo) lo = t;
        }
        if (lo > hi) return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

bool Cell::edge_meets_open(const Point3& a, const Point3& b) const {
    auto iv = clip_segment(a, b);
    if (!iv || iv->first >= iv->second) return false;
    // By convexity the clipped piece is either inside the open cell or flat
    // on one face; one interior probe decides.
    Rat mid((iv->first + iv->second) / 2);
    return strictly_contains(point_at(a, b, mid));
}

bool Cell::tri_meets_closed(const Triangle3& tri) const {
    // Conservative double bbox reject first.
    for (int k = 0; k < 3; k++) {
        if (tri.bhi[k] < blo[k] || tri.blo[k] > bhi[k]) return false;
    }
    std::vector<Point3> poly = {tri.v[0], tri.v[1], tri.v[2]};
    for (const CellFace& f : faces) {
        poly = clip_polygon(poly, f.plane, f.side);
        if (poly.empty()) return false;
    }
    return true;
}

Point3 Cell::interior_point() const {
    Rat x(0), y(0), z(0);
    long cnt = 0;
    for (const CellFace& f : faces) {
        for (const Point3& p : f.poly) {
            x += p.x;
            y += p.y;
            z += p.z;
            cnt++;
        }
    }
    if (cnt == 0) throw std::logic_error("Cell::interior_point: empty cell");
    return Point3(Rat(x / cnt), Rat(y / cnt), Rat(z / cnt));
}

Point3 Cell::boundary_exit(const Point3& from, const Vec3& dir) const {
    bool have = false;
    Rat t_exit(0);
    for (const CellFace& f : faces) {
        Rat slope(Rat(f.side) * dot(f.plane.n, dir));
        if (slope <= 0) continue;
        Rat f0(Rat(f.side) * f.plane.eval(from));
        Rat t(-f0 / slope);
        if (!have || t < t_exit) {
            t_exit = t;
            have = true;
        }
    }
    if (!have) throw std::logic_error("Cell::boundary_exit: unbounded direction");
    if (t_exit < 0) t_exit = 0;  // from on the boundary, ray leaving
    return from + (t_exit * dir);
}

void Cell::refresh_bbox() {
    for (int k = 0; k < 3; k++) {
        blo[k] = 1e300;
        bhi[k] = -1e300;
    }
    for (const CellFace& f : faces) {
        for (const Point3& p : f.poly) {
            double c[3] = {p.ax, p.ay, p.az};
            for (int k = 0; k < 3; k++) {
                double err = std::fabs(c[k]) * kApproxRelErr + kApproxAbsErr;
                blo[k] = std::min(blo[k], c[k] - err);
                bhi[k] = std::max(bhi[k], c[k] + err);
            }
        }
    }
}

Cell cell_from_box(const Box3& box) {
    Cell c;
    // Corner helper: corner(i, j, k) with bits choosing lo/hi.
    auto corner = [&](int i, int j, int k) {
        return Point3(i ? box.hi[0] : box.lo[0], j ? box.hi[1] : box.lo[1],
                      k ? box.hi[2] : box.lo[2]);
    };
    auto axis_plane = [&](int k, const Rat& off) {
        Vec3 n(Rat(k == 0), Rat(k == 1), Rat(k == 2));
        return Plane3{n, off};
    };
    // x faces
    c.faces.push_back({axis_plane(0, box.hi[0]), 1,
                       {corner(1, 0, 0), corner(1, 1, 0), corner(1, 1, 1), corner(1, 0, 1)}});
    c.faces.push_back({axis_plane(0, box.lo[0]), -1,
                       {corner(0, 0, 0), corner(0, 1, 0), corner(0, 1, 1), corner(0, 0, 1)}});
    // y faces
    c.faces.push_back({axis_plane(1, box.hi[1]), 1,
                       {corner(0, 1, 0), corner(1, 1, 0), corner(1, 1, 1), corner(0, 1, 1)}});
    c.faces.push_back({axis_plane(1, box.lo[1]), -1,
                       {corner(0, 0, 0), corner(1, 0, 0), corner(1, 0, 1), corner(0, 0, 1)}});
    // z faces
    c.faces.push_back({axis_plane(2, box.hi[2]), 1,
                       {corner(0, 0, 1), corner(1, 0, 1), corner(1, 1, 1), corner(0, 1, 1)}});
    c.faces.push_back({axis_plane(2, box.lo[2]), -1,
                       {corner(0, 0, 0), corner(1, 0, 0), corner(1, 1, 0), corner(0, 1, 0)}});
    c.refresh_bbox();
    return c;
}

bool poly_is_2d(const std::vector<Point3>& poly) {
    if (poly.size() < 3) return false;
    for (std::size_t i = 2; i < poly.size(); i++) {
        if (!cross(poly[1] - poly[0], poly[i] - poly[0]).is_zero()) return true;
    }
    return false;
}

std::vector<Point3> big_plane_quad(const Plane3& h, const Rat& bound) {
    const Vec3& n = h.n;
    // Axis least aligned with the normal gives a sturdy in-plane direction.
    Rat an[3] = {rat_abs(n.x), rat_abs(n.y), rat_abs(n.z)};
    int k = 0;
    if (an[1] < an[k]) k = 1;
    if (an[2] < an[k]) k = 2;
    Vec3 ek(Rat(k == 0), Rat(k == 1), Rat(k == 2));
    Vec3 u = cross(n, ek);
    Vec3 v = cross(n, u);

    Rat nn(dot(n, n));
    Point3 p0 = Point3() + (Rat(h.off / nn) * n);

    auto coeff_bound = [&](const Vec3& w) {
        Rat aw(rat_abs(w.x) + rat_abs(w.y) + rat_abs(w.z));
        Rat pmax(rat_abs(p0.x));
        if (rat_abs(p0.y) > pmax) pmax = rat_abs(p0.y);
        if (rat_abs(p0.z) > pmax) pmax = rat_abs(p0.z);
        return Rat((bound + pmax) * aw / dot(w, w) + 1);
    };
    Rat mu = coeff_bound(u), mv = coeff_bound(v);
    Vec3 U = mu * u, V = mv * v;
    return {p0 + U + V, p0 + (Rat(-1) * U) + V, p0 + (Rat(-1) * U) + (Rat(-1) * V),
            p0 + U + (Rat(-1) * V)};
}

namespace {

Rat cell_coord_bound(const Cell& cell) {
    Rat b(0);
    for (const CellFace& f : cell.faces) {
        for (const Point3& p : f.poly) {
            if (rat_abs(p.x) > b) b = rat_abs(p.x);
            if (rat_abs(p.y) > b) b = rat_abs(p.y);
            if (rat_abs(p.z) > b) b = rat_abs(p.z);
        }
    }
    return Rat(b + 1);
}

Cell half_of(const Cell& cell, const Plane3& h, int keep_side, const Rat& bound) {
    Cell out;
    for (const CellFace& f : cell.faces) {
        std::vector<Point3> clipped = clip_polygon(f.poly, h, keep_side);
        if (poly_is_2d(clipped)) out.faces.push_back({f.plane, f.side, std::move(clipped)});
    }
    std::vector<Point3> nf = big_plane_quad(h, bound);
    for (const CellFace& f : cell.faces) {
        nf = clip_polygon(nf, f.plane, f.side);
        if (nf.empty()) break;
    }
    if (poly_is_2d(nf)) out.faces.push_back({h, keep_side, std::move(nf)});
    out.refresh_bbox();
    return out;
}

}  // namespace

std::pair<Cell, Cell> split_cell(const Cell& cell, const Plane3& h) {
    Rat bound = cell_coord_bound(cell);
    return {half_of(cell, h, 1, bound), half_of(cell, h, -1, bound)};
}

bool plane_cuts_cell(const Cell& cell, const Plane3& h) {
    bool pos = false, neg = false;
    for (const CellFace& f : cell.faces) {
        for (const Point3& p : f.poly) {
            int s = sign(h.eval(p));
            if (s > 0) pos = true;
            if (s < 0) neg = true;
            if (pos && neg) return true;
        }
    }
    return false;
}

}  // namespace trishoot
