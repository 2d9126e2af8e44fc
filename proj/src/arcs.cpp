#include "trishoot/arcs.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <random>
#include <sstream>
#include <utility>

namespace trishoot {

RootExt Arc2::height(const Rat& x) const {
    if (kind == ArcKind::Segment) {
        Rat t((x - a.x) / (b.x - a.x));
        return RootExt(Rat(a.y + t * (b.y - a.y)));
    }
    Rat d(x - center.x);
    Rat rad(radius * radius - d * d);
    return RootExt(center.y, Rat(side == ArcSide::Lower ? -1 : 1), rad);
}

std::optional<RootExt> Arc2::slope_at(const Rat& x) const {
    if (kind == ArcKind::Segment) return RootExt(Rat((b.y - a.y) / (b.x - a.x)));
    Rat d(x - center.x);
    Rat rad(radius * radius - d * d);
    if (rad == 0) return std::nullopt;  // vertical tangent at a diameter endpoint
    // Lower side: f'(x) = d / sqrt(rad) = (d/rad)*sqrt(rad); upper negates.
    Rat coef(d / rad);
    if (side == ArcSide::Upper) coef = -coef;
    return RootExt(Rat(0), coef, rad);
}

Arc2 Arc2::reflected() const {
    Arc2 r;
    r.id = id;
    r.kind = kind;
    if (kind == ArcKind::Segment) {
        r.a = Point2(Rat(-b.x), Rat(-b.y));
        r.b = Point2(Rat(-a.x), Rat(-a.y));
    } else {
        r.center = Point2(Rat(-center.x), Rat(-center.y));
        r.radius = radius;
        r.xlo = Rat(-xhi);
        r.xhi = Rat(-xlo);
        r.side = side == ArcSide::Lower ? ArcSide::Upper : ArcSide::Lower;
    }
    return r;
}

Arc2 Arc2::mirrored() const {
    Arc2 r;
    r.id = id;
    r.kind = kind;
    if (kind == ArcKind::Segment) {
        r.a = Point2(Rat(-b.x), b.y);
        r.b = Point2(Rat(-a.x), a.y);
    } else {
        r.center = Point2(Rat(-center.x), center.y);
        r.radius = radius;
        r.xlo = Rat(-xhi);
        r.xhi = Rat(-xlo);
        r.side = side;
    }
    return r;
}

Arc2 make_segment_arc(int id, Point2 p, Point2 q) {
    if (p.x == q.x) throw InvalidArc("segment arc must be nonvertical with distinct x");
    Arc2 arc;
    arc.id = id;
    arc.kind = ArcKind::Segment;
    if (p.x < q.x) {
        arc.a = std::move(p);
        arc.b = std::move(q);
    } else {
        arc.a = std::move(q);
        arc.b = std::move(p);
    }
    return arc;
}

Arc2 make_circle_arc(int id, Point2 center, Rat radius, Rat xlo, Rat xhi, ArcSide side) {
    if (radius <= 0) throw InvalidArc("circle arc needs positive radius");
    if (!(xlo < xhi)) throw InvalidArc("circle arc needs xlo < xhi");
    if (xlo < center.x - radius || xhi > center.x + radius)
        throw InvalidArc("circle arc x-range outside the circle");
    Arc2 arc;
    arc.id = id;
    arc.kind = ArcKind::Circle;
    arc.center = std::move(center);
    arc.radius = std::move(radius);
    arc.xlo = std::move(xlo);
    arc.xhi = std::move(xhi);
    arc.side = side;
    return arc;
}

int point_vs_arc(const Arc2& arc, const Point2& p) {
    assert(p.x >= arc.ux() && p.x <= arc.vx());
    return -compare(arc.height(p.x), p.y);
}

bool kappa_contains(const Arc2& arc, const Point2& p) {
    if (p.x < arc.ux() || p.x > arc.vx()) return false;
    return point_vs_arc(arc, p) > 0;
}

bool line_meets_arc(const Arc2& arc, const Line2& line) {
    if (arc.kind == ArcKind::Segment) {
        return sign(line.residual(arc.a)) * sign(line.residual(arc.b)) <= 0;
    }
    // Substitute y = a*x + b into the circle equation.
    const Rat& cx = arc.center.x;
    Rat e(line.b - arc.center.y);
    Rat A(1 + line.a * line.a);
    Rat B(2 * (line.a * e - cx));
    Rat C(cx * cx + e * e - arc.radius * arc.radius);
    Rat D(B * B - 4 * A * C);
    int sD = sign(D);
    if (sD < 0) return false;
    for (int piece = 0; piece < (sD == 0 ? 1 : 2); ++piece) {
        Rat beta(piece == 0 ? Rat(-1) / (2 * A) : Rat(1) / (2 * A));
        RootExt x(Rat(-B / (2 * A)), beta, D);
        if (compare(x, arc.xlo) < 0 || compare(x, arc.xhi) > 0) continue;
        RootExt ymc(x * line.a + e);  // y - cy at the root
        int s = sign(ymc);
        if (arc.side == ArcSide::Lower ? s <= 0 : s >= 0) return true;
    }
    return false;
}

bool vline_meets_arc(const Arc2& arc, const Rat& x) { return x >= arc.ux() && x <= arc.vx(); }

bool dual_region_contains(const Arc2& arc, const Rat& qa, const Rat& qb) {
    if (arc.kind == ArcKind::Segment) {
        // Between (or on) the two endpoint duals b = -a*p.x + p.y.
        Rat ru(arc.a.y - qa * arc.a.x - qb);
        Rat rv(arc.b.y - qa * arc.b.x - qb);
        return sign(ru) * sign(rv) <= 0;
    }
    // Circular arc: residuals of the endpoint duals plus the tangency-curve
    // side test, selected by where the critical abscissa x* (tangent slope
    // equal to qa) falls relative to the x-range.
    RootExt ru(arc.uy() - Rat(qa * arc.xlo + qb));
    RootExt rv(arc.vy() - Rat(qa * arc.xhi + qb));
    int su = sign(ru), sv = sign(rv);
    Rat W(1 + qa * qa);
    // x* - cx = k / sqrt(W), with k depending on the side.
    Rat k(arc.side == ArcSide::Lower ? Rat(qa * arc.radius) : Rat(-qa * arc.radius));
    // x* >= xlo  <=>  k >= (xlo - cx)*sqrt(W); likewise for xhi.
    bool crit_right_of_lo = sign_radical(k, {{Rat(arc.center.x - arc.xlo), W}}) >= 0;
    bool crit_left_of_hi = sign_radical(k, {{Rat(arc.center.x - arc.xhi), W}}) <= 0;
    Rat h(arc.center.y - qa * arc.center.x - qb);
    if (arc.side == ArcSide::Lower) {
        // Convex residual: meets iff min <= 0 and max(ru, rv) >= 0.
        int smin;
        if (!crit_right_of_lo)
            smin = su;
        else if (!crit_left_of_hi)
            smin = sv;
        else
            smin = sign(RootExt(h, Rat(-arc.radius), W));
        return smin <= 0 && (su >= 0 || sv >= 0);
    }
    // Concave residual: meets iff max >= 0 and min(ru, rv) <= 0.
    int smax;
    if (!crit_right_of_lo)
        smax = su;
    else if (!crit_left_of_hi)
        smax = sv;
    else
        smax = sign(RootExt(h, arc.radius, W));
    return smax >= 0 && (su <= 0 || sv <= 0);
}

std::vector<RootExt> ray_arc_params(const Arc2& arc, const Ray2& ray) {
    if (ray.dir.is_zero()) throw std::invalid_argument("ray_arc_params: zero direction");
    std::vector<RootExt> out;
    if (arc.kind == ArcKind::Segment) {
        Vec2 e(arc.b - arc.a);
        Vec2 w(arc.a - ray.apex);
        Rat denom(cross(ray.dir, e));
        if (denom == 0) {
            if (cross(w, ray.dir) != 0) return out;  // parallel, disjoint
            // Collinear: first touching parameter of the overlap, if any.
            Rat dd(dot(ray.dir, ray.dir));
            Rat ta(dot(w, ray.dir) / dd);
            Rat tb(dot(Vec2(arc.b - ray.apex), ray.dir) / dd);
            Rat lo(std::min(ta, tb)), hi(std::max(ta, tb));
            if (hi < 0) return out;
            out.emplace_back(Rat(lo < 0 ? Rat(0) : lo));
            return out;
        }
        Rat t(cross(w, e) / denom);
        Rat s(cross(w, ray.dir) / denom);
        if (t >= 0 && s >= 0 && s <= 1) out.emplace_back(t);
        return out;
    }
    Vec2 m(ray.apex - arc.center);
    Rat A(dot(ray.dir, ray.dir));
    Rat B(2 * dot(ray.dir, m));
    Rat C(dot(m, m) - arc.radius * arc.radius);
    Rat D(B * B - 4 * A * C);
    int sD = sign(D);
    if (sD < 0) return out;
    for (int piece = 0; piece < (sD == 0 ? 1 : 2); ++piece) {
        Rat beta(piece == 0 ? Rat(-1) / (2 * A) : Rat(1) / (2 * A));
        RootExt t(Rat(-B / (2 * A)), beta, D);
        if (sign(t) < 0) continue;
        RootExt x(t * ray.dir.x + ray.apex.x);
        if (compare(x, arc.xlo) < 0 || compare(x, arc.xhi) > 0) continue;
        RootExt ymc(t * ray.dir.y + Rat(ray.apex.y - arc.center.y));
        int s = sign(ymc);
        if (arc.side == ArcSide::Lower ? s > 0 : s < 0) continue;
        out.push_back(t);
    }
    return out;
}

bool ray_meets_arc(const Arc2& arc, const Ray2& ray) { return !ray_arc_params(arc, ray).empty(); }

bool seg_meets_arc(const Arc2& arc, const Point2& p, const Point2& q) {
    if (p == q) {
        if (p.x < arc.ux() || p.x > arc.vx()) return false;
        return point_vs_arc(arc, p) == 0;
    }
    auto params = ray_arc_params(arc, Ray2(p, q - p));
    return !params.empty() && compare(params.front(), Rat(1)) <= 0;
}

namespace {

Point2 reflect_pt(const Point2& p) { return Point2(Rat(-p.x), Rat(-p.y)); }

}  // namespace

bool ray_meets_arc_cases(const Arc2& arc, const Ray2& ray) {
    if (ray.dir.x == 0) throw std::invalid_argument("ray_meets_arc_cases: vertical ray");
    if (!arc.convex())
        return ray_meets_arc_cases(arc.reflected(),
                                   Ray2(reflect_pt(ray.apex), Vec2(Rat(-ray.dir.x), Rat(-ray.dir.y))));
    if (ray.dir.x < 0)
        return ray_meets_arc_cases(arc.mirrored(),
                                   Ray2(Point2(Rat(-ray.apex.x), ray.apex.y), Vec2(Rat(-ray.dir.x), ray.dir.y)));
    // Convex arc, rightward ray.
    Rat a(ray.dir.y / ray.dir.x);
    Rat b(ray.apex.y - a * ray.apex.x);
    if (!line_meets_arc(arc, Line2(a, b))) return false;
    if (ray.apex.x <= arc.ux()) return true;  // every arc point is already at x >= apex.x
    if (ray.apex.x > arc.vx()) return false;
    int vert = point_vs_arc(arc, ray.apex);
    if (vert == 0) return true;  // apex on the arc
    if (vert > 0) {
        // Apex above the arc: the ray escapes to the right, so it meets the
        // arc iff the right endpoint is on or above the supporting line.
        return compare(arc.vy(), Rat(a * arc.vx() + b)) >= 0;
    }
    // Apex strictly below the arc. At x == vx the ray can no longer reach
    // any arc point; otherwise it hits iff it climbs faster than the arc.
    if (ray.apex.x == arc.vx()) return false;
    auto sl = arc.slope_at(ray.apex.x);
    assert(sl.has_value());  // vertical tangents only occur at range endpoints
    return compare(*sl, a) < 0;
}

bool seg_meets_arc_cases(const Arc2& arc, const Point2& p, const Point2& q) {
    if (p.x == q.x) throw std::invalid_argument("seg_meets_arc_cases: vertical segment");
    if (!arc.convex()) return seg_meets_arc_cases(arc.reflected(), reflect_pt(p), reflect_pt(q));
    const Point2& l = p.x < q.x ? p : q;
    const Point2& r = p.x < q.x ? q : p;
    Rat a((r.y - l.y) / (r.x - l.x));
    Rat b(l.y - a * l.x);
    if (!line_meets_arc(arc, Line2(a, b))) return false;
    if (kappa_contains(arc, l) && kappa_contains(arc, r)) return false;
    return ray_meets_arc_cases(arc, Ray2(l, r - l)) && ray_meets_arc_cases(arc, Ray2(r, l - r));
}

std::optional<ArcHit> ray_arc_first(const Arc2& arc, const Ray2& ray) {
    auto params = ray_arc_params(arc, ray);
    if (params.empty()) return std::nullopt;
    ArcHit hit;
    hit.arc_id = arc.id;
    hit.t = params.front();
    hit.point.x = hit.t * ray.dir.x + ray.apex.x;
    hit.point.y = hit.t * ray.dir.y + ray.apex.y;
    return hit;
}

std::optional<ArcHit> brute_arc_first_hit(const std::vector<Arc2>& arcs, const Ray2& ray) {
    std::optional<ArcHit> best;
    for (const Arc2& arc : arcs) {
        auto hit = ray_arc_first(arc, ray);
        if (!hit) continue;
        if (!best) {
            best = std::move(hit);
            continue;
        }
        int c = compare(hit->t, best->t);
        if (c < 0 || (c == 0 && hit->arc_id < best->arc_id)) best = std::move(hit);
    }
    return best;
}

namespace {

Rat parse_num(const std::string& tok, std::size_t lineno) {
    auto v = rat_parse(tok);
    if (!v) throw InvalidArc("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
    return *v;
}

}  // namespace

std::vector<Arc2> parse_arcs(std::istream& in) {
    std::vector<Arc2> arcs;
    std::string line;
    std::size_t lineno = 0;
    int next_id = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        try {
            if (tag == "S") {
                if (toks.size() != 4)
                    throw InvalidArc("S needs 4 numbers");
                arcs.push_back(make_segment_arc(next_id,
                                                Point2(parse_num(toks[0], lineno), parse_num(toks[1], lineno)),
                                                Point2(parse_num(toks[2], lineno), parse_num(toks[3], lineno))));
            } else if (tag == "C") {
                if (toks.size() != 6)
                    throw InvalidArc("C needs 5 numbers and a side");
                ArcSide side;
                if (toks[5] == "lower")
                    side = ArcSide::Lower;
                else if (toks[5] == "upper")
                    side = ArcSide::Upper;
                else
                    throw InvalidArc("side must be lower or upper");
                arcs.push_back(make_circle_arc(next_id,
                                               Point2(parse_num(toks[0], lineno), parse_num(toks[1], lineno)),
                                               parse_num(toks[2], lineno), parse_num(toks[3], lineno),
                                               parse_num(toks[4], lineno), side));
            } else {
                throw InvalidArc("unknown arc tag '" + tag + "'");
            }
        } catch (const InvalidArc& e) {
            throw InvalidArc("line " + std::to_string(lineno) + ": " + e.what());
        }
        ++next_id;
    }
    return arcs;
}

std::string arc_str(const Arc2& arc) {
    if (arc.kind == ArcKind::Segment)
        return "S " + rat_str(arc.a.x) + " " + rat_str(arc.a.y) + " " + rat_str(arc.b.x) + " " +
               rat_str(arc.b.y);
    return "C " + rat_str(arc.center.x) + " " + rat_str(arc.center.y) + " " + rat_str(arc.radius) +
           " " + rat_str(arc.xlo) + " " + rat_str(arc.xhi) + " " +
           (arc.side == ArcSide::Lower ? "lower" : "upper");
}

std::vector<Arc2> random_arc_set(const ArcSetSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    auto coord_k = [&](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
    };
    std::vector<Arc2> arcs;
    arcs.reserve(spec.count);
    const long g = spec.grid;
    const long lim = spec.span * g;
    for (std::size_t i = 0; i < spec.count; ++i) {
        int id = static_cast<int>(i);
        if (rng() % 100 < spec.circle_pct) {
            long kr = coord_k(1, 2 * g);  // radius in (0, 2]
            long kcx = coord_k(-lim, lim);
            long kcy = coord_k(-lim, lim);
            long klo = kcx - kr, khi = kcx + kr;
            long k1 = coord_k(klo, khi - 1);
            long k2 = coord_k(k1 + 1, khi);
            ArcSide side = (rng() & 1) ? ArcSide::Lower : ArcSide::Upper;
            arcs.push_back(make_circle_arc(id, Point2(rat_frac(kcx, g), rat_frac(kcy, g)),
                                           rat_frac(kr, g), rat_frac(k1, g), rat_frac(k2, g), side));
        } else {
            long x1 = coord_k(-lim, lim);
            long x2 = coord_k(-lim, lim);
            while (x2 == x1) x2 = coord_k(-lim, lim);
            arcs.push_back(make_segment_arc(id,
                                            Point2(rat_frac(x1, g), rat_frac(coord_k(-lim, lim), g)),
                                            Point2(rat_frac(x2, g), rat_frac(coord_k(-lim, lim), g))));
        }
    }
    return arcs;
}

}  // namespace trishoot
