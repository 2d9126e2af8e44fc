#include <random>
#include <sstream>

#include "doctest.h"
#include "trishoot/arcs.hpp"

using namespace trishoot;

namespace {

Point2 pt(long x, long y) { return Point2(Rat(x), Rat(y)); }

Arc2 unit_lower() {
    return make_circle_arc(0, pt(0, 0), Rat(1), Rat(-1), Rat(1), ArcSide::Lower);
}

}  // namespace

TEST_CASE("arc heights, slopes, and endpoints") {
    Arc2 c = unit_lower();
    CHECK(c.convex());
    CHECK(c.ux() == Rat(-1));
    CHECK(c.vx() == Rat(1));
    CHECK(c.uy() == RootExt(Rat(0)));
    CHECK(c.vy() == RootExt(Rat(0)));
    CHECK(c.height(Rat(0)) == RootExt(Rat(-1)));
    CHECK(c.height(Rat(1, 2)) == RootExt(Rat(0), Rat(-1, 2), Rat(3)));
    CHECK(*c.slope_at(Rat(0)) == RootExt(Rat(0)));
    CHECK(!c.slope_at(Rat(1)).has_value());
    CHECK(!c.slope_at(Rat(-1)).has_value());
    CHECK(*c.slope_at(Rat(3, 5)) == RootExt(Rat(3, 4)));  // 3-4-5 point, rational slope

    Arc2 s = make_segment_arc(1, pt(2, 1), pt(0, 0));  // normalizes left-right
    CHECK(s.a == pt(0, 0));
    CHECK(s.b == pt(2, 1));
    CHECK(*s.slope_at(Rat(1)) == RootExt(Rat(1, 2)));
    CHECK(s.height(Rat(1)) == RootExt(Rat(1, 2)));

    Arc2 u = make_circle_arc(2, pt(0, 0), Rat(1), Rat(-1), Rat(1), ArcSide::Upper);
    CHECK(!u.convex());
    CHECK(u.height(Rat(0)) == RootExt(Rat(1)));
    Arc2 r = u.reflected();
    CHECK(r.convex());
    CHECK(r.height(Rat(0)) == RootExt(Rat(-1)));
    Arc2 m = c.mirrored();
    CHECK(m.side == ArcSide::Lower);
    CHECK(m.height(Rat(1, 2)) == c.height(Rat(-1, 2)));
}

TEST_CASE("line and vertical-line intersection with the unit semicircle") {
    Arc2 c = unit_lower();
    CHECK(line_meets_arc(c, Line2(Rat(0), Rat(-1, 2))));
    CHECK(!line_meets_arc(c, Line2(Rat(0), Rat(-2))));
    CHECK(line_meets_arc(c, Line2(Rat(1), Rat(-9, 10))));
    CHECK(line_meets_arc(c, Line2(Rat(0), Rat(-1))));   // tangent at the bottom
    CHECK(!line_meets_arc(c, Line2(Rat(0), Rat(1, 2))));  // crosses the circle but only its upper half
    CHECK(vline_meets_arc(c, Rat(0)));
    CHECK(vline_meets_arc(c, Rat(-1)));
    CHECK(!vline_meets_arc(c, Rat(2)));
}

TEST_CASE("dual region membership matches the spec examples") {
    Arc2 c = unit_lower();
    CHECK(dual_region_contains(c, Rat(0), Rat(-1, 2)));
    CHECK(!dual_region_contains(c, Rat(0), Rat(-2)));
    CHECK(dual_region_contains(c, Rat(0), Rat(-1)));  // tangency curve boundary counts
    CHECK(!dual_region_contains(c, Rat(0), Rat(1, 2)));

    Arc2 s = make_segment_arc(1, pt(0, 0), pt(2, 1));
    CHECK(dual_region_contains(s, Rat(0), Rat(1, 2)));   // horizontal line through the middle
    CHECK(!dual_region_contains(s, Rat(0), Rat(2)));
    CHECK(dual_region_contains(s, Rat(1, 2), Rat(0)));   // supporting line itself
}

TEST_CASE("ray intersection: spec examples and verticals") {
    Arc2 c = unit_lower();

    Ray2 hit_left(pt(-2, 0), Vec2(Rat(1), Rat(0)));
    hit_left.apex = Point2(Rat(-2), Rat(-1, 2));
    CHECK(ray_meets_arc(c, hit_left));
    CHECK(ray_meets_arc_cases(c, hit_left));
    auto first = ray_arc_first(c, hit_left);
    REQUIRE(first.has_value());
    CHECK(first->point.x == RootExt(Rat(0), Rat(-1, 2), Rat(3)));  // -sqrt(3)/2
    CHECK(first->point.y == RootExt(Rat(-1, 2)));
    CHECK(first->t == RootExt(Rat(2), Rat(-1, 2), Rat(3)));

    // Line hits the circle but the ray starts past both lower-arc crossings.
    Ray2 miss_c(Point2(Rat(0), Rat(-9, 10)), Vec2(Rat(1), Rat(1)));
    CHECK(line_meets_arc(c, Line2(Rat(1), Rat(-9, 10))));
    CHECK(!ray_meets_arc(c, miss_c));
    CHECK(!ray_meets_arc_cases(c, miss_c));

    Ray2 miss_line(pt(0, -2), Vec2(Rat(1), Rat(0)));
    CHECK(!ray_meets_arc(c, miss_line));
    CHECK(!ray_meets_arc_cases(c, miss_line));

    Ray2 up(pt(0, -2), Vec2(Rat(0), Rat(1)));
    CHECK(ray_meets_arc(c, up));
    auto vhit = ray_arc_first(c, up);
    REQUIRE(vhit.has_value());
    CHECK(vhit->t == RootExt(Rat(1)));
    CHECK(vhit->point.x == RootExt(Rat(0)));
    CHECK(vhit->point.y == RootExt(Rat(-1)));
    CHECK(!ray_meets_arc(c, Ray2(pt(0, -2), Vec2(Rat(0), Rat(-1)))));

    Ray2 leftward(Point2(Rat(2), Rat(-1, 2)), Vec2(Rat(-1), Rat(0)));
    CHECK(ray_meets_arc(c, leftward));
    CHECK(ray_meets_arc_cases(c, leftward));
    auto lhit = ray_arc_first(c, leftward);
    REQUIRE(lhit.has_value());
    CHECK(lhit->point.x == RootExt(Rat(0), Rat(1, 2), Rat(3)));  // +sqrt(3)/2 first from the right
}

TEST_CASE("segment intersection: kappa examples") {
    Arc2 c = unit_lower();

    Point2 p(Rat(-1, 2), Rat(-1, 10)), q(Rat(1, 2), Rat(-1, 10));
    CHECK(kappa_contains(c, p));
    CHECK(kappa_contains(c, q));
    CHECK(!seg_meets_arc(c, p, q));
    CHECK(!seg_meets_arc_cases(c, p, q));
    // Both directed rays do hit; only the kappa condition rules the chord out.
    CHECK(ray_meets_arc_cases(c, Ray2(p, q - p)));
    CHECK(ray_meets_arc_cases(c, Ray2(q, p - q)));

    Point2 a(Rat(-2), Rat(-1, 2)), b(Rat(2), Rat(-1, 2));
    CHECK(seg_meets_arc(c, a, b));
    CHECK(seg_meets_arc_cases(c, a, b));

    CHECK(!seg_meets_arc(c, pt(5, 5), pt(5, 5)));
    CHECK(seg_meets_arc(c, pt(0, -1), pt(0, -1)));  // degenerate point on the arc

    CHECK(!kappa_contains(c, pt(0, -1)));   // on the arc, not strictly above
    CHECK(kappa_contains(c, pt(0, 5)));     // unbounded above
    CHECK(!kappa_contains(c, pt(-2, 5)));   // outside the x-range
    CHECK(kappa_contains(c, Point2(Rat(-1), Rat(1, 2))));  // on the left vertical boundary ray's x
}

TEST_CASE("upper arcs answer through reflection") {
    Arc2 u = make_circle_arc(7, pt(0, 0), Rat(1), Rat(-1), Rat(1), ArcSide::Upper);
    Ray2 r(Point2(Rat(-2), Rat(1, 2)), Vec2(Rat(1), Rat(0)));
    CHECK(ray_meets_arc(u, r));
    CHECK(ray_meets_arc_cases(u, r));
    auto hit = ray_arc_first(u, r);
    REQUIRE(hit.has_value());
    CHECK(hit->point.x == RootExt(Rat(0), Rat(-1, 2), Rat(3)));
    CHECK(hit->point.y == RootExt(Rat(1, 2)));

    // Mirror image of the case-(c) miss below.
    Ray2 miss(Point2(Rat(0), Rat(9, 10)), Vec2(Rat(-1), Rat(-1)));
    CHECK(!ray_meets_arc(u, miss));
    CHECK(!ray_meets_arc_cases(u, miss));

    Point2 p(Rat(-1, 2), Rat(1, 10)), q(Rat(1, 2), Rat(1, 10));
    CHECK(!seg_meets_arc(u, p, q));
    CHECK(!seg_meets_arc_cases(u, p, q));
}

TEST_CASE("collinear ray overlaps report the first touching parameter") {
    Arc2 s = make_segment_arc(0, pt(0, 0), pt(4, 2));

    auto inside = ray_arc_params(s, Ray2(pt(2, 1), Vec2(Rat(2), Rat(1))));
    REQUIRE(inside.size() == 1);
    CHECK(inside[0] == RootExt(Rat(0)));

    auto before = ray_arc_params(s, Ray2(pt(-2, -1), Vec2(Rat(2), Rat(1))));
    REQUIRE(before.size() == 1);
    CHECK(before[0] == RootExt(Rat(1)));
    auto hit = ray_arc_first(s, Ray2(pt(-2, -1), Vec2(Rat(2), Rat(1))));
    CHECK(hit->point.x == RootExt(Rat(0)));
    CHECK(hit->point.y == RootExt(Rat(0)));

    CHECK(ray_arc_params(s, Ray2(pt(6, 3), Vec2(Rat(2), Rat(1)))).empty());

    auto back = ray_arc_params(s, Ray2(pt(6, 3), Vec2(Rat(-2), Rat(-1))));
    REQUIRE(back.size() == 1);
    auto bhit = ray_arc_first(s, Ray2(pt(6, 3), Vec2(Rat(-2), Rat(-1))));
    CHECK(bhit->point.x == RootExt(Rat(4)));  // near endpoint touches first

    // Parallel but offset: no intersection.
    CHECK(ray_arc_params(s, Ray2(pt(0, 1), Vec2(Rat(2), Rat(1)))).empty());
}

TEST_CASE("brute first hit orders by parameter then id") {
    std::vector<Arc2> arcs;
    arcs.push_back(make_segment_arc(5, pt(1, -1), pt(3, 1)));   // crosses y=0 at x=2
    arcs.push_back(make_segment_arc(3, pt(1, 1), pt(3, -1)));   // crosses y=0 at x=2 too
    Ray2 r(pt(0, 0), Vec2(Rat(1), Rat(0)));
    auto hit = brute_arc_first_hit(arcs, r);
    REQUIRE(hit.has_value());
    CHECK(hit->arc_id == 3);  // tie resolves to the smaller id
    CHECK(hit->t == RootExt(Rat(2)));

    arcs.push_back(make_segment_arc(9, pt(0, -1), pt(1, 1)));   // crosses earlier, at x=1/2
    hit = brute_arc_first_hit(arcs, r);
    REQUIRE(hit.has_value());
    CHECK(hit->arc_id == 9);
    CHECK(hit->t == RootExt(Rat(1, 2)));
    CHECK(hit->point.x == RootExt(Rat(1, 2)));
    CHECK(hit->point.y == RootExt(Rat(0)));

    CHECK(!brute_arc_first_hit(arcs, Ray2(pt(0, 5), Vec2(Rat(1), Rat(0)))).has_value());
}

TEST_CASE("randomized equivalence: case analysis against direct ray tests") {
    auto arcs = random_arc_set({.count = 200, .seed = 5, .span = 8, .grid = 8, .circle_pct = 55});
    REQUIRE(arcs.size() == 200);
    std::mt19937_64 rng(101);
    auto grid = [&](long lim, long den) {
        long k = static_cast<long>(rng() % static_cast<unsigned long>(2 * lim * den + 1)) - lim * den;
        return rat_frac(k, den);
    };
    int hits = 0, misses = 0;
    for (int i = 0; i < 10000; ++i) {
        const Arc2& arc = arcs[rng() % arcs.size()];
        Point2 apex(grid(10, 4), grid(10, 4));
        if (i % 5 == 0) apex.x = (i % 2 ? arc.ux() : arc.vx());  // force endpoint-aligned apexes
        long dx = static_cast<long>(rng() % 6) - 3;
        if (dx == 0) dx = 1;
        long dy = static_cast<long>(rng() % 7) - 3;
        Ray2 ray(apex, Vec2(Rat(dx), Rat(dy)));
        bool direct = ray_meets_arc(arc, ray);
        bool cases = ray_meets_arc_cases(arc, ray);
        CHECK(direct == cases);
        (direct ? hits : misses)++;
    }
    CHECK(hits > 500);
    CHECK(misses > 500);
}

TEST_CASE("randomized equivalence: case analysis against direct segment tests") {
    auto arcs = random_arc_set({.count = 200, .seed = 6, .span = 8, .grid = 8, .circle_pct = 45});
    std::mt19937_64 rng(202);
    auto grid = [&](long lim, long den) {
        long k = static_cast<long>(rng() % static_cast<unsigned long>(2 * lim * den + 1)) - lim * den;
        return rat_frac(k, den);
    };
    int hits = 0, misses = 0;
    for (int i = 0; i < 10000; ++i) {
        const Arc2& arc = arcs[rng() % arcs.size()];
        Point2 p(grid(10, 4), grid(10, 4));
        Point2 q(grid(10, 4), grid(10, 4));
        if (i % 7 == 0) p.x = (i % 2 ? arc.ux() : arc.vx());
        while (p.x == q.x) q.x = grid(10, 4);
        bool direct = seg_meets_arc(arc, p, q);
        bool cases = seg_meets_arc_cases(arc, p, q);
        CHECK(direct == cases);
        (direct ? hits : misses)++;
    }
    CHECK(hits > 300);
    CHECK(misses > 300);
}

TEST_CASE("randomized equivalence: dual region against direct line tests") {
    auto arcs = random_arc_set({.count = 250, .seed = 7, .span = 8, .grid = 8, .circle_pct = 60});
    std::mt19937_64 rng(303);
    auto grid = [&](long lim, long den) {
        long k = static_cast<long>(rng() % static_cast<unsigned long>(2 * lim * den + 1)) - lim * den;
        return rat_frac(k, den);
    };
    int in = 0, out = 0;
    for (int i = 0; i < 10000; ++i) {
        const Arc2& arc = arcs[rng() % arcs.size()];
        Rat a = grid(3, 4), b = grid(12, 4);
        bool direct = line_meets_arc(arc, Line2(a, b));
        bool dual = dual_region_contains(arc, a, b);
        CHECK(direct == dual);
        (direct ? in : out)++;
    }
    CHECK(in > 500);
    CHECK(out > 500);
}

TEST_CASE("arc text parsing and validation") {
    std::istringstream in(
        "# arcs\n"
        "S 0 0 2 1\n"
        "\n"
        "C 0 0 1 -1 1 lower\n"
        "C 1/2 -3/4 5/4 -0.5 1.5 upper\n");
    auto arcs = parse_arcs(in);
    REQUIRE(arcs.size() == 3);
    CHECK(arcs[0].kind == ArcKind::Segment);
    CHECK(arcs[0].id == 0);
    CHECK(arcs[1].kind == ArcKind::Circle);
    CHECK(arcs[1].side == ArcSide::Lower);
    CHECK(arcs[2].center == Point2(Rat(1, 2), Rat(-3, 4)));
    CHECK(arcs[2].xlo == Rat(-1, 2));
    CHECK(arcs[2].xhi == Rat(3, 2));
    CHECK(arcs[2].side == ArcSide::Upper);

    // Round trip through the text form.
    std::istringstream again(arc_str(arcs[2]) + "\n" + arc_str(arcs[0]) + "\n");
    auto back = parse_arcs(again);
    REQUIRE(back.size() == 2);
    CHECK(back[0].center == arcs[2].center);
    CHECK(back[0].xlo == arcs[2].xlo);
    CHECK(back[1].a == arcs[0].a);
    CHECK(back[1].b == arcs[0].b);

    auto throws = [](const std::string& text) {
        std::istringstream s(text);
        CHECK_THROWS_AS(parse_arcs(s), InvalidArc);
    };
    throws("S 0 0 0 5\n");              // vertical segment
    throws("S 1 2 3\n");                // arity
    throws("C 0 0 1 -2 1 lower\n");     // x-range outside the circle
    throws("C 0 0 1 -1 1 middle\n");    // bad side
    throws("C 0 0 0 -1 1 lower\n");     // zero radius
    throws("C 0 0 1 1 1 lower\n");      // empty x-range
    throws("X 1 2\n");                  // unknown tag
    throws("S a 0 1 1\n");              // bad number
}

TEST_CASE("random arc sets are valid and mixed") {
    auto arcs = random_arc_set({.count = 300, .seed = 9, .span = 8, .grid = 8, .circle_pct = 50});
    REQUIRE(arcs.size() == 300);
    int circles = 0, segments = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        CHECK(arcs[i].id == static_cast<int>(i));
        if (arcs[i].kind == ArcKind::Circle) {
            circles++;
            CHECK(arcs[i].xlo < arcs[i].xhi);
            CHECK(arcs[i].xlo >= arcs[i].center.x - arcs[i].radius);
            CHECK(arcs[i].xhi <= arcs[i].center.x + arcs[i].radius);
        } else {
            segments++;
            CHECK(arcs[i].a.x < arcs[i].b.x);
        }
    }
    CHECK(circles > 50);
    CHECK(segments > 50);
}
