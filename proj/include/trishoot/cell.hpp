#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trishoot/scene.hpp"

namespace trishoot {

// One bounding face of a convex cell: the halfspace side*(plane.eval(x)) <= 0
// together with the polygon cell ∩ plane (kept non-degenerate).
struct CellFace {
    Plane3 plane;
    int side = 1;
    std::vector<Point3> poly;
};

// Bounded convex polytope represented by its non-redundant faces. Face
// polygons are maintained incrementally through splits, so vertex
// enumeration is never needed.
struct Cell {
    std::vector<CellFace> faces;
    int depth = 0;  // recursion level that produced this cell
    double blo[3] = {0, 0, 0}, bhi[3] = {0, 0, 0};  // conservative double bbox

    // +1 strictly inside, 0 on the boundary, -1 outside.
    int side_of(const Point3& p) const;
    bool contains(const Point3& p) const { return side_of(p) >= 0; }
    bool strictly_contains(const Point3& p) const { return side_of(p) > 0; }

    // Parameter interval of [a,b] within the closed cell, if any.
    std::optional<std::pair<Rat, Rat>> clip_segment(const Point3& a, const Point3& b) const;

    // The open-cell crossing test used by wide/narrow classification.
    bool edge_meets_open(const Point3& a, const Point3& b) const;

    // Closed-cell intersection test for a whole triangle.
    bool tri_meets_closed(const Triangle3& tri) const;

    // Average of all face-polygon vertices; strictly interior for a
    // full-dimensional cell.
    Point3 interior_point() const;

    // First boundary point of the ray from + t*dir, t >= 0 (from must be in
    // the closed cell; if from is on a face the ray leaves through, this is
    // from itself).
    Point3 boundary_exit(const Point3& from, const Vec3& dir) const;

    void refresh_bbox();
};

Cell cell_from_box(const Box3& box);

// Splits by a plane into (h <= 0 side, h >= 0 side). Both returned cells are
// full-dimensional only if the plane cuts the interior; callers check with
// plane_cuts_cell first.
std::pair<Cell, Cell> split_cell(const Cell& cell, const Plane3& h);

// True if the cell has points strictly on both sides of h.
bool plane_cuts_cell(const Cell& cell, const Plane3& h);

// A quadrilateral on h large enough to contain cell ∩ h for any cell whose
// points have coordinates bounded by |x_i| <= bound.
std::vector<Point3> big_plane_quad(const Plane3& h, const Rat& bound);

// True if the polygon has three non-collinear vertices.
bool poly_is_2d(const std::vector<Point3>& poly);

}  // namespace trishoot
