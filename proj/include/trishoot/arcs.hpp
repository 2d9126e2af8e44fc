#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trishoot/rational.hpp"
#include "trishoot/root_ext.hpp"

namespace trishoot {

// Planar arcs: line segments and circular arcs, x-monotone, used both as a
// standalone 2D query domain and for query segments that are coplanar with a
// space-partition cutting plane. Every predicate here is exact; circular-arc
// endpoints and hit points live in one square-root extension (RootExt).

struct Point2 {
    Rat x;
    Rat y;

    Point2() : x(0), y(0) {}
    Point2(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
};

struct Vec2 {
    Rat x;
    Rat y;

    Vec2() : x(0), y(0) {}
    Vec2(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool is_zero() const { return x == 0 && y == 0; }
};

inline Vec2 operator-(const Point2& p, const Point2& q) { return Vec2(Rat(p.x - q.x), Rat(p.y - q.y)); }
inline Rat cross(const Vec2& u, const Vec2& v) { return Rat(u.x * v.y - u.y * v.x); }
inline Rat dot(const Vec2& u, const Vec2& v) { return Rat(u.x * v.x + u.y * v.y); }

// Nonvertical line y = a*x + b.
struct Line2 {
    Rat a;
    Rat b;

    Line2() : a(0), b(0) {}
    Line2(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

    // Signed residual p.y - (a*p.x + b): positive above, negative below.
    Rat residual(const Point2& p) const { return Rat(p.y - a * p.x - b); }
};

// Ray with rational apex and direction; directions may point anywhere
// (vertical rays are legal for the direct predicates and the oracle).
struct Ray2 {
    Point2 apex;
    Vec2 dir;

    Ray2() = default;
    Ray2(Point2 apex_, Vec2 dir_) : apex(std::move(apex_)), dir(std::move(dir_)) {}
};

// Point with coordinates in a square-root extension (hit points).
struct ExtPoint2 {
    RootExt x;
    RootExt y;

    bool operator==(const ExtPoint2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const ExtPoint2& o) const { return !(*this == o); }
};

enum class ArcKind { Segment, Circle };
enum class ArcSide { Lower, Upper };

struct InvalidArc : std::runtime_error {
    explicit InvalidArc(const std::string& what) : std::runtime_error(what) {}
};

// One x-monotone arc: either a nonvertical line segment or a circular arc
// confined to the lower or upper half of its circle. Circular arcs are
// convex exactly when they come from the lower half (tangent slope
// nondecreasing left to right); segments are always convex. Concave (upper)
// arcs are admitted as input and handled by reflecting them, together with
// the query, through the origin.
struct Arc2 {
    int id = -1;
    ArcKind kind = ArcKind::Segment;

    // Segment data: endpoints with a.x < b.x.
    Point2 a;
    Point2 b;

    // Circle data: (x-cx)^2 + (y-cy)^2 = r^2 restricted to side and
    // [xlo, xhi], with cx - r <= xlo < xhi <= cx + r.
    Point2 center;
    Rat radius;
    Rat xlo, xhi;
    ArcSide side = ArcSide::Lower;

    bool convex() const { return kind == ArcKind::Segment || side == ArcSide::Lower; }

    // Endpoint abscissae: u is the left endpoint, v the right one.
    const Rat& ux() const { return kind == ArcKind::Segment ? a.x : xlo; }
    const Rat& vx() const { return kind == ArcKind::Segment ? b.x : xhi; }

    // Height of the arc graph at x; requires ux() <= x <= vx().
    RootExt height(const Rat& x) const;
    RootExt uy() const { return height(ux()); }
    RootExt vy() const { return height(vx()); }

    // Tangent slope of the graph at x (one number: circular arcs are smooth
    // in their interior). nullopt means a vertical tangent, which happens
    // only at an endpoint sitting on the horizontal diameter.
    std::optional<RootExt> slope_at(const Rat& x) const;

    // Point reflection through the origin; swaps Lower and Upper, so every
    // concave arc reflects to a convex one. Keeps the id.
    Arc2 reflected() const;

    // Mirror across the y-axis (x -> -x); preserves convexity and turns
    // leftward rays into rightward ones. Keeps the id.
    Arc2 mirrored() const;
};

Arc2 make_segment_arc(int id, Point2 p, Point2 q);
Arc2 make_circle_arc(int id, Point2 center, Rat radius, Rat xlo, Rat xhi, ArcSide side);

// Exact classification of p against the arc graph: -1 below, 0 on, +1 above.
// Requires ux() <= p.x <= vx().
int point_vs_arc(const Arc2& arc, const Point2& p);

// True iff p lies in kappa(arc): strictly above the arc and within its
// x-range (the region bounded below by the arc and on the sides by the
// upward vertical rays through the endpoints).
bool kappa_contains(const Arc2& arc, const Point2& p);

// Closed intersection predicates (touching an endpoint counts).
bool line_meets_arc(const Arc2& arc, const Line2& line);
bool vline_meets_arc(const Arc2& arc, const Rat& x);  // vertical line x = const

// Membership of (a, b) in the dual region of the arc: the set of
// (slope, offset) pairs whose line meets the arc. Derived from the region's
// boundary pieces (endpoint duals and the tangency curve), independently of
// line_meets_arc, so the two can check each other.
bool dual_region_contains(const Arc2& arc, const Rat& a, const Rat& b);

// All ray parameters t >= 0 at which apex + t*dir lies on the arc, sorted
// increasing. A collinear overlap with a segment arc reports only the first
// touching parameter. At most two entries otherwise.
std::vector<RootExt> ray_arc_params(const Arc2& arc, const Ray2& ray);

bool ray_meets_arc(const Arc2& arc, const Ray2& ray);
bool seg_meets_arc(const Arc2& arc, const Point2& p, const Point2& q);

// Case-split versions used by the multi-level structure: a rightward or
// leftward nonvertical ray hits a convex arc iff the supporting line does
// and one of three apex conditions holds (apex left of u; apex below with
// tangent slope at the apex abscissa less than the ray slope; apex above
// with v on or above the line). Segments conjoin: line hits, an endpoint
// outside kappa, and both directed rays hit. Both functions must agree with
// the direct predicates; the test suite checks them pairwise at scale.
bool ray_meets_arc_cases(const Arc2& arc, const Ray2& ray);      // requires dir.x != 0
bool seg_meets_arc_cases(const Arc2& arc, const Point2& p, const Point2& q);  // requires p.x != q.x

struct ArcHit {
    int arc_id = -1;
    RootExt t;  // ray parameter of the hit
    ExtPoint2 point;
};

// First intersection of the ray with one arc / with a whole set. Ties across
// arcs resolve to the smallest id. This is the reference oracle for the
// multi-level structure's shooting walk.
std::optional<ArcHit> ray_arc_first(const Arc2& arc, const Ray2& ray);
std::optional<ArcHit> brute_arc_first_hit(const std::vector<Arc2>& arcs, const Ray2& ray);

// Text format, one arc per line:
//   S x1 y1 x2 y2
//   C cx cy r xlo xhi side      (side: lower | upper)
// Numbers are rational (p/q) or decimal literals; blank lines and lines
// starting with '#' are skipped. Throws InvalidArc with the line number on
// malformed input. Ids are assigned in reading order starting at 0.
std::vector<Arc2> parse_arcs(std::istream& in);
std::string arc_str(const Arc2& arc);

// Deterministic random mix of segments and circular arcs on a coarse grid
// (coarse so that exact coincidences actually occur in tests).
struct ArcSetSpec {
    std::size_t count = 100;
    unsigned long seed = 1;
    long span = 8;         // coordinates land in [-span, span]
    long grid = 8;         // denominator of the coordinate grid
    unsigned circle_pct = 50;  // percentage of circular arcs
};
std::vector<Arc2> random_arc_set(const ArcSetSpec& spec);

}  // namespace trishoot
