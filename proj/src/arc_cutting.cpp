#include "trishoot/arc_cutting.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace trishoot {

CutCurve CutCurve::rline(const Rat& m, const Rat& c) {
    CutCurve k;
    k.kind = Kind::RLine;
    k.m = m;
    k.c = c;
    return k;
}

CutCurve CutCurve::branch(const Rat& bx, const Rat& by, const Rat& br, int sgn) {
    CutCurve k;
    k.kind = Kind::Branch;
    k.bx = bx;
    k.by = by;
    k.br = br;
    k.sgn = sgn;
    return k;
}

CutCurve CutCurve::graph(const Arc2* a) {
    CutCurve k;
    k.kind = Kind::Graph;
    k.arc = a;
    return k;
}

CutCurve CutCurve::vline(const Rat& x) {
    CutCurve k;
    k.kind = Kind::VLine;
    k.m = x;
    return k;
}

bool curve_same(const CutCurve& a, const CutCurve& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case CutCurve::Kind::RLine:
            return a.m == b.m && a.c == b.c;
        case CutCurve::Kind::Branch:
            return a.bx == b.bx && a.by == b.by && a.br == b.br && a.sgn == b.sgn;
        case CutCurve::Kind::VLine:
            return a.m == b.m;
        case CutCurve::Kind::Graph: {
            const Arc2& x = *a.arc;
            const Arc2& y = *b.arc;
            if (x.kind != y.kind) return false;
            if (x.kind == ArcKind::Segment) return x.a == y.a && x.b == y.b;
            return x.center == y.center && x.radius == y.radius && x.xlo == y.xlo &&
                   x.xhi == y.xhi && x.side == y.side;
        }
    }
    return false;
}

XInterval curve_domain(const CutCurve& c) {
    if (c.kind == CutCurve::Kind::Graph) return {c.arc->ux(), c.arc->vx()};
    if (c.kind == CutCurve::Kind::VLine) return {c.m, c.m};
    return {};
}

RootExt curve_eval(const CutCurve& c, const Rat& x) {
    switch (c.kind) {
        case CutCurve::Kind::RLine:
            return RootExt(Rat(c.m * x + c.c));
        case CutCurve::Kind::Branch:
            return RootExt(Rat(c.by - c.bx * x), Rat(c.sgn * c.br), Rat(1 + x * x));
        case CutCurve::Kind::Graph:
            return c.arc->height(x);
        default:
            throw std::logic_error("curve_eval: vertical lines have no graph");
    }
}

RootExt curve_eval_ext(const CutCurve& c, const RootExt& x) {
    if (c.kind != CutCurve::Kind::RLine)
        throw std::logic_error("curve_eval_ext: RLine curves only");
    return x * c.m + c.c;
}

namespace {

// Ascending real roots of A x^2 + B x + C = 0. An identically-zero or
// root-free polynomial reports none.
std::vector<RootExt> quad_roots(const Rat& A, const Rat& B, const Rat& C) {
    std::vector<RootExt> out;
    if (A == 0) {
        if (B != 0) out.emplace_back(Rat(-C / B));
        return out;
    }
    Rat D(B * B - 4 * A * C);
    int sd = sign(D);
    if (sd < 0) return out;
    Rat mid(-B / (2 * A));
    if (sd == 0) {
        out.emplace_back(mid);
        return out;
    }
    Rat half(rat_abs(Rat(Rat(1) / (2 * A))));
    out.emplace_back(mid, Rat(-half), D);
    out.emplace_back(mid, half, D);
    return out;
}

// Crossings of two total curves of the form m*x + c + k*sqrt(1+x^2).
std::vector<RootExt> bcurve_cross(const Rat& m1, const Rat& c1, const Rat& k1, const Rat& m2,
                                  const Rat& c2, const Rat& k2) {
    Rat dm(m1 - m2), dc(c1 - c2), K(k2 - k1);
    std::vector<RootExt> out;
    if (K == 0) {
        if (dm != 0) out.emplace_back(Rat(-dc / dm));
        return out;
    }
    // (dm*x + dc)^2 = K^2 (1 + x^2), with sign(dm*x + dc) == sign(K)
    for (RootExt& x : quad_roots(Rat(dm * dm - K * K), Rat(2 * dm * dc), Rat(dc * dc - K * K))) {
        RootExt lhs = x * dm + dc;
        if (sign(lhs) == sign(K)) out.push_back(std::move(x));
    }
    return out;
}

// x-roots of the circle (x-cx)^2 + (y-cy)^2 = r^2 against the line
// y = m*x + c, restricted to the given half (touching the equator counts).
std::vector<RootExt> line_circle_roots(const Rat& m, const Rat& c, const Point2& center,
                                       const Rat& r, ArcSide side) {
    Rat e(c - center.y);
    std::vector<RootExt> out;
    for (RootExt& x : quad_roots(Rat(1 + m * m), Rat(2 * (m * e - center.x)),
                                 Rat(center.x * center.x + e * e - r * r))) {
        RootExt dy = x * m + e;  // y - cy at the root
        int s = sign(dy);
        if (side == ArcSide::Lower ? s <= 0 : s >= 0) out.push_back(std::move(x));
    }
    return out;
}

struct SegLine {
    Rat m, c;
};

SegLine seg_line(const Arc2& a) {
    Rat m(Rat(a.b.y - a.a.y) / Rat(a.b.x - a.a.x));
    return {m, Rat(a.a.y - m * a.a.x)};
}

void clip_roots(std::vector<RootExt>& xs, const std::optional<Rat>& lo,
                const std::optional<Rat>& hi) {
    xs.erase(std::remove_if(xs.begin(), xs.end(),
                            [&](const RootExt& x) {
                                if (lo && compare(x, *lo) < 0) return true;
                                if (hi && compare(x, *hi) > 0) return true;
                                return false;
                            }),
             xs.end());
}

void sort_unique(std::vector<RootExt>& xs) {
    std::sort(xs.begin(), xs.end(), [](const RootExt& a, const RootExt& b) {
        return compare(a, b) < 0;
    });
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](const RootExt& a, const RootExt& b) { return compare(a, b) == 0; }),
             xs.end());
}

std::vector<RootExt> graph_graph_cross(const Arc2& A, const Arc2& B) {
    std::optional<Rat> lo(std::max(A.ux(), B.ux()));
    std::optional<Rat> hi(std::min(A.vx(), B.vx()));
    if (*lo > *hi) return {};
    std::vector<RootExt> out;
    if (A.kind == ArcKind::Segment && B.kind == ArcKind::Segment) {
        SegLine la = seg_line(A), lb = seg_line(B);
        if (la.m == lb.m) return {};  // parallel or identical support lines
        out.emplace_back(Rat((lb.c - la.c) / (la.m - lb.m)));
    } else if (A.kind == ArcKind::Segment || B.kind == ArcKind::Segment) {
        const Arc2& seg = A.kind == ArcKind::Segment ? A : B;
        const Arc2& cir = A.kind == ArcKind::Segment ? B : A;
        SegLine l = seg_line(seg);
        out = line_circle_roots(l.m, l.c, cir.center, cir.radius, cir.side);
    } else if (A.center == B.center && A.radius == B.radius) {
        if (A.side == B.side) return {};  // identical circles: no order change
        out.emplace_back(Rat(A.center.x - A.radius));
        out.emplace_back(Rat(A.center.x + A.radius));
    } else {
        // Radical axis P x + Q y + R = 0.
        Rat P(2 * (B.center.x - A.center.x));
        Rat Q(2 * (B.center.y - A.center.y));
        Rat R((A.center.x * A.center.x + A.center.y * A.center.y - A.radius * A.radius) -
              (B.center.x * B.center.x + B.center.y * B.center.y - B.radius * B.radius));
        if (Q != 0) {
            Rat m(Rat(-P) / Q), c(Rat(-R) / Q);
            for (RootExt& x : line_circle_roots(m, c, A.center, A.radius, A.side)) {
                RootExt dy2 = x * m + Rat(c - B.center.y);
                int s = sign(dy2);
                if (B.side == ArcSide::Lower ? s <= 0 : s >= 0) out.push_back(std::move(x));
            }
        } else if (P != 0) {
            Rat x(Rat(-R) / P);
            if (x >= *lo && x <= *hi && compare(A.height(x) - B.height(x), Rat(0)) == 0)
                out.emplace_back(x);
        }
    }
    clip_roots(out, lo, hi);
    sort_unique(out);
    return out;
}

std::vector<RootExt> graph_line_cross(const Arc2& A, const Rat& m, const Rat& c) {
    std::vector<RootExt> out;
    if (A.kind == ArcKind::Segment) {
        SegLine l = seg_line(A);
        if (l.m == m) return {};
        out.emplace_back(Rat((c - l.c) / (l.m - m)));
    } else {
        out = line_circle_roots(m, c, A.center, A.radius, A.side);
    }
    clip_roots(out, A.ux(), A.vx());
    sort_unique(out);
    return out;
}

}  // namespace

std::vector<RootExt> curve_cross_xs(const CutCurve& a, const CutCurve& b) {
    using K = CutCurve::Kind;
    if (a.kind == K::VLine || b.kind == K::VLine)
        throw std::logic_error("curve_cross_xs: vertical lines are wall events");
    if (curve_same(a, b)) return {};
    auto bparams = [](const CutCurve& c, Rat& m, Rat& off, Rat& k) {
        if (c.kind == K::RLine) {
            m = c.m;
            off = c.c;
            k = 0;
        } else {
            m = Rat(-c.bx);
            off = c.by;
            k = Rat(c.sgn * c.br);
        }
    };
    if (a.kind != K::Graph && b.kind != K::Graph) {
        Rat m1, c1, k1, m2, c2, k2;
        bparams(a, m1, c1, k1);
        bparams(b, m2, c2, k2);
        std::vector<RootExt> out = bcurve_cross(m1, c1, k1, m2, c2, k2);
        sort_unique(out);
        return out;
    }
    if (a.kind == K::Graph && b.kind == K::Graph) return graph_graph_cross(*a.arc, *b.arc);
    if (a.kind == K::Graph && b.kind == K::RLine) return graph_line_cross(*a.arc, b.m, b.c);
    if (a.kind == K::RLine && b.kind == K::Graph) return graph_line_cross(*b.arc, a.m, a.c);
    throw std::logic_error("curve_cross_xs: unsupported curve pair");
}

namespace {

// Rational strictly greater / smaller than a one-radical value.
Rat rat_above(const RootExt& v) {
    double d = v.approx();
    Rat g = std::isfinite(d) ? Rat(std::floor(d)) : Rat(0);
    Rat step(1);
    while (compare(v, g) >= 0) {
        g += step;
        step *= 2;
    }
    return g;
}

Rat rat_below(const RootExt& v) {
    double d = v.approx();
    Rat g = std::isfinite(d) ? Rat(std::ceil(d)) : Rat(0);
    Rat step(1);
    while (compare(v, g) <= 0) {
        g -= step;
        step *= 2;
    }
    return g;
}

}  // namespace

Rat probe_x_in(const std::optional<RootExt>& lo, const std::optional<RootExt>& hi) {
    if (lo && hi) return rational_between(*lo, *hi);
    if (lo) return rat_above(*lo);
    if (hi) return rat_below(*hi);
    return Rat(0);
}

Point2 probe_point_in(const TrapRegion& t) {
    Rat x = probe_x_in(t.lo, t.hi);
    if (t.floor && t.ceil) {
        RootExt fv = curve_eval(*t.floor, x);
        RootExt cv = curve_eval(*t.ceil, x);
        assert(compare(fv, cv) < 0);
        return Point2(x, rational_between(fv, cv));
    }
    if (t.floor) return Point2(x, rat_above(curve_eval(*t.floor, x)));
    if (t.ceil) return Point2(x, rat_below(curve_eval(*t.ceil, x)));
    return Point2(x, Rat(0));
}

bool curve_crosses_trap(const CutCurve& c, const TrapRegion& t) {
    if (c.kind == CutCurve::Kind::VLine) {
        RootExt x{c.m};
        if (t.lo && compare(*t.lo, c.m) > 0) return false;
        if (t.hi && compare(*t.hi, c.m) < 0) return false;
        return true;
    }
    // Effective x-interval: trapezoid walls clipped to the curve's domain.
    XInterval dom = curve_domain(c);
    std::optional<RootExt> jlo = t.lo, jhi = t.hi;
    if (dom.lo && (!jlo || compare(*jlo, *dom.lo) < 0)) jlo = RootExt(*dom.lo);
    if (dom.hi && (!jhi || compare(*jhi, *dom.hi) > 0)) jhi = RootExt(*dom.hi);
    if (jlo && jhi) {
        int c0 = compare(*jlo, *jhi);
        if (c0 > 0) return false;
        if (c0 == 0) {
            // Single abscissa; rational whenever a domain end binds. An
            // irrational pinch cannot arise from rational-ended domains, but
            // stay conservative if it ever did.
            if (!jlo->is_rational()) return true;
            Rat x = jlo->a;
            RootExt v = curve_eval(c, x);
            if (t.floor && compare(v, curve_eval(*t.floor, x)) < 0) return false;
            if (t.ceil && compare(v, curve_eval(*t.ceil, x)) > 0) return false;
            return true;
        }
    }
    // A crossing with the floor or ceiling inside the closed interval means
    // the curve touches the closed trapezoid.
    for (const std::optional<CutCurve>* bcp : {&t.floor, &t.ceil}) {
        if (!*bcp) continue;
        for (const RootExt& x : curve_cross_xs(c, **bcp)) {
            if (jlo && compare(x, *jlo) < 0) continue;
            if (jhi && compare(x, *jhi) > 0) continue;
            return true;
        }
    }
    // No boundary crossing: the vertical order against floor and ceiling is
    // constant over the interval; one interior probe decides.
    Rat x = probe_x_in(jlo, jhi);
    RootExt v = curve_eval(c, x);
    if (t.floor && compare(v, curve_eval(*t.floor, x)) < 0) return false;
    if (t.ceil && compare(v, curve_eval(*t.ceil, x)) > 0) return false;
    return true;
}

TrapCutting::TrapCutting(int n, const CurvesOf& curves_of, std::vector<Contains> channels,
                         CuttingConfig cfg)
    : channels_(std::move(channels)), cfg_(cfg), rng_(cfg.seed) {
    curves_.resize(n);
    std::vector<int> all(n);
    for (int i = 0; i < n; i++) {
        all[i] = i;
        curves_[i] = curves_of(i);
        for (const CutCurve& c : curves_[i])
            if (c.kind != CutCurve::Kind::RLine) lines_only_ = false;
    }
    thresh_ = std::max<long>(1, n);
    while (thresh_ > cfg_.leaf_max) thresh_ = (thresh_ + cfg_.branch - 1) / cfg_.branch;
    // Healthy hierarchies are quadratic in total conflict mass (each level
    // multiplies trapezoids by the local crossing count), so the automatic
    // budget scales with n^2; only runaway degenerate refinement hits it.
    node_cap_ = cfg_.max_nodes > 0
                    ? cfg_.max_nodes
                    : 4096 + 64L * n * n / std::max(1, cfg_.leaf_max);
    nodes_.emplace_back();
    nodes_[0].region = cfg_.root;
    nodes_[0].bound = n;
    nodes_[0].added.resize(channels_.size());
    build(0, std::move(all));
    stats_.leaf_budget = thresh_;
    for (const TrapNode& nd : nodes_) {
        stats_.nodes++;
        stats_.max_depth = std::max(stats_.max_depth, nd.depth);
        if (static_cast<std::size_t>(nd.depth) >= stats_.by_depth.size())
            stats_.by_depth.resize(nd.depth + 1, {0, 0});
        auto& [mx, bd] = stats_.by_depth[nd.depth];
        mx = std::max(mx, static_cast<long>(nd.conflict_count));
        bd = std::max(bd, nd.bound);
        if (nd.leaf) {
            stats_.leaves++;
            stats_.max_leaf_conflict =
                std::max(stats_.max_leaf_conflict, static_cast<long>(nd.conflict_count));
        }
        if (nd.conflict_count > nd.bound) stats_.bound_violations++;
    }
}

bool TrapCutting::region_crossed(int arc, const TrapRegion& t) const {
    for (const CutCurve& c : curves_[arc])
        if (curve_crosses_trap(c, t)) return true;
    return false;
}

void TrapCutting::build(int id, std::vector<int> conflict) {
    nodes_[id].conflict_count = static_cast<int>(conflict.size());
    const int depth = nodes_[id].depth;
    if (static_cast<long>(conflict.size()) <= thresh_ || depth >= cfg_.max_depth) {
        nodes_[id].leaf = true;
        nodes_[id].conflict = std::move(conflict);
        return;
    }
    // Inputs far from general position (clusters of curves concurrent at one
    // point, duplicated verticals) can shed conflicts so slowly that the tree
    // grows superpolynomially before any depth limit binds. A hard node budget
    // keeps construction near-linear; queries fall back to exact scans over
    // the oversized leaves this freezes.
    if (static_cast<long>(nodes_.size()) > node_cap_) {
        nodes_[id].leaf = true;
        nodes_[id].conflict = std::move(conflict);
        stats_.capped_leaves++;
        return;
    }
    const long child_bound =
        std::max(thresh_, (nodes_[id].bound + cfg_.branch - 1) / cfg_.branch);

    Subdivision best;
    bool have = false;
    // Sample sizes stay capped: the subdivision work is quadratic in the
    // sample, and a moderate sample already meets the per-child budget with
    // high probability. If even the largest sample misses it, the best
    // attempt still stands and stuck children freeze into leaves below.
    const std::size_t scap =
        std::max<std::size_t>(cfg_.sample_cap, static_cast<std::size_t>(cfg_.sample_arcs));
    for (int attempt = 0; attempt < cfg_.max_attempts; attempt++) {
        std::size_t m = static_cast<std::size_t>(cfg_.sample_arcs) << attempt;
        if (m > scap) m = scap;
        if (m >= conflict.size()) m = conflict.size();
        std::vector<int> sample;
        if (m == conflict.size()) {
            sample = conflict;
        } else {
            sample.reserve(m);
            std::sample(conflict.begin(), conflict.end(), std::back_inserter(sample), m, rng_);
        }
        Subdivision sub = subdivide(nodes_[id].region, conflict, sample);
        bool usable = sub.traps.size() >= 2;
        if (usable && (!have || sub.max_conflict < best.max_conflict)) {
            best = std::move(sub);
            have = true;
        }
        if (have && best.max_conflict <= child_bound) break;
        if (m == conflict.size() || m == scap) break;
    }
    if (!have) {
        // No sample produced a genuine subdivision (pathologically degenerate
        // conflicts, e.g. many regions touching one corner). Keep the node as
        // an oversized leaf; stats record the budget miss.
        nodes_[id].leaf = true;
        nodes_[id].conflict = std::move(conflict);
        return;
    }

    nodes_[id].leaf = false;
    nodes_[id].walls = best.walls;
    nodes_[id].slab_children.assign(best.slab_traps.size(), {});
    std::vector<int> child_ids(best.traps.size());
    for (std::size_t i = 0; i < best.traps.size(); i++) {
        int cid = static_cast<int>(nodes_.size());
        child_ids[i] = cid;
        nodes_.emplace_back();
        TrapNode& ch = nodes_.back();
        ch.region = best.traps[i].region;
        ch.parent = id;
        ch.depth = depth + 1;
        ch.bound = child_bound;
        ch.added.resize(channels_.size());
    }
    for (std::size_t s = 0; s < best.slab_traps.size(); s++)
        for (int ti : best.slab_traps[s])
            nodes_[id].slab_children[s].push_back(child_ids[ti]);

    for (std::size_t i = 0; i < best.traps.size(); i++) {
        const int cid = child_ids[i];
        std::vector<int>& child_conf = best.traps[i].conflict;
        if (!channels_.empty()) {
            Point2 pt = probe_point_in(nodes_[cid].region);
            for (int a : conflict) {
                if (std::binary_search(child_conf.begin(), child_conf.end(), a)) continue;
                for (std::size_t k = 0; k < channels_.size(); k++)
                    if (channels_[k](a, pt)) nodes_[cid].added[k].push_back(a);
            }
        }
        if (child_conf.size() >= conflict.size()) {
            // No shrinkage: the child's conflicts are a subset of the parent's,
            // so equal size means the identical set. That happens only for a
            // degenerate cluster pinned to the child's closure (say, a pencil
            // of curves through one corner, kept everywhere by closed-crossing
            // semantics); further subdivision would recurse forever on it.
            // Freeze the child as an oversized leaf; stats record the miss.
            nodes_[cid].conflict_count = static_cast<int>(child_conf.size());
            nodes_[cid].leaf = true;
            nodes_[cid].conflict = std::move(child_conf);
        } else {
            build(cid, std::move(child_conf));
        }
    }
}

TrapCutting::Subdivision TrapCutting::subdivide(const TrapRegion& region,
                                                const std::vector<int>& conflict,
                                                const std::vector<int>& sample) const {
    // Sample curve set; the parent's own floor and ceiling come first so that
    // duplicate collapse keeps them as representatives.
    std::vector<CutCurve> cs;
    const int floor_cid = region.floor ? 0 : -1;
    if (region.floor) cs.push_back(*region.floor);
    const int ceil_cid = region.ceil ? static_cast<int>(cs.size()) : -1;
    if (region.ceil) cs.push_back(*region.ceil);
    for (int a : sample)
        for (const CutCurve& c : curves_[a]) {
            bool dup = false;
            for (const CutCurve& e : cs)
                if (curve_same(e, c)) {
                    dup = true;
                    break;
                }
            if (!dup) cs.push_back(c);
        }
    const int nc = static_cast<int>(cs.size());

    auto inside = [&](const RootExt& x) {
        if (region.lo && compare(x, *region.lo) <= 0) return false;
        if (region.hi && compare(x, *region.hi) >= 0) return false;
        return true;
    };

    // Wall events: pairwise crossings, graph domain ends, vertical lines.
    struct Ev {
        RootExt x;
        int i, j;
    };
    std::vector<Ev> evs;
    for (int i = 0; i < nc; i++) {
        if (cs[i].kind == CutCurve::Kind::VLine) {
            RootExt x{cs[i].m};
            if (inside(x)) evs.push_back({std::move(x), i, i});
            continue;
        }
        XInterval d = curve_domain(cs[i]);
        if (d.lo) {
            RootExt x{*d.lo};
            if (inside(x)) evs.push_back({std::move(x), i, i});
        }
        if (d.hi) {
            RootExt x{*d.hi};
            if (inside(x)) evs.push_back({std::move(x), i, i});
        }
        for (int j = i + 1; j < nc; j++) {
            if (cs[j].kind == CutCurve::Kind::VLine) continue;
            for (RootExt& x : curve_cross_xs(cs[i], cs[j]))
                if (inside(x)) evs.push_back({std::move(x), i, j});
        }
    }
    std::sort(evs.begin(), evs.end(),
              [](const Ev& a, const Ev& b) { return compare(a.x, b.x) < 0; });

    Subdivision out;
    std::vector<std::vector<int>> involved;
    std::vector<char> barrier;  // wall carries a vertical line: nothing merges
    for (Ev& ev : evs) {
        if (out.walls.empty() || compare(ev.x, out.walls.back()) != 0) {
            out.walls.push_back(std::move(ev.x));
            involved.emplace_back();
            barrier.push_back(0);
        }
        involved.back().push_back(ev.i);
        involved.back().push_back(ev.j);
        if (cs[ev.i].kind == CutCurve::Kind::VLine) barrier.back() = 1;
    }
    const int nslab = static_cast<int>(out.walls.size()) + 1;
    out.slab_traps.resize(nslab);

    // Sweep the slabs; a trapezoid survives a wall when its bounding pair
    // stays adjacent and neither bound participates in an event there.
    struct Open {
        int f, c;  // curve ids; -1 = unbounded side (or parent bound absent)
        int trap;
    };
    std::vector<Open> prev;
    for (int s = 0; s < nslab; s++) {
        std::optional<RootExt> slo = s == 0 ? region.lo : std::optional<RootExt>(out.walls[s - 1]);
        std::optional<RootExt> shi =
            s == nslab - 1 ? region.hi : std::optional<RootExt>(out.walls[s]);
        Rat px = probe_x_in(slo, shi);

        struct Ent {
            RootExt v;
            int cid;
        };
        std::vector<Ent> ents;
        for (int i = 0; i < nc; i++) {
            if (cs[i].kind == CutCurve::Kind::VLine) continue;
            XInterval d = curve_domain(cs[i]);
            if (d.lo && px < *d.lo) continue;
            if (d.hi && px > *d.hi) continue;
            ents.push_back({curve_eval(cs[i], px), i});
        }
        std::sort(ents.begin(), ents.end(), [](const Ent& a, const Ent& b) {
            int c0 = compare(a.v, b.v);
            if (c0 != 0) return c0 < 0;
            return a.cid < b.cid;
        });
        // Collapse curves identical over this slab (equal at an interior
        // probe with no interior crossing means identical here).
        std::vector<Ent> col;
        for (Ent& e : ents) {
            if (!col.empty() && compare(col.back().v, e.v) == 0) continue;
            col.push_back(std::move(e));
        }
        // Clip to the parent band and list the column boundaries.
        int kf = -1, kc = -1;
        for (std::size_t k = 0; k < col.size(); k++) {
            if (col[k].cid == floor_cid) kf = static_cast<int>(k);
            if (col[k].cid == ceil_cid) kc = static_cast<int>(k);
        }
        std::vector<int> bnds;
        bnds.push_back(region.floor ? floor_cid : -1);
        int from = region.floor ? kf + 1 : 0;
        int to = region.ceil ? kc : static_cast<int>(col.size());
        for (int k = from; k < to; k++)
            if (region.floor ? k > kf : true) bnds.push_back(col[k].cid);
        bnds.push_back(region.ceil ? ceil_cid : -1);

        const std::vector<int>* evset = s > 0 ? &involved[s - 1] : nullptr;
        auto involved_at_wall = [&](int cid) {
            if (cid < 0 || !evset) return false;
            return std::find(evset->begin(), evset->end(), cid) != evset->end();
        };

        std::vector<Open> cur;
        for (std::size_t t = 0; t + 1 < bnds.size(); t++) {
            int f = bnds[t], c = bnds[t + 1];
            int trap = -1;
            if (s > 0 && !barrier[s - 1] && !involved_at_wall(f) && !involved_at_wall(c)) {
                for (const Open& o : prev)
                    if (o.f == f && o.c == c) {
                        trap = o.trap;
                        break;
                    }
            }
            if (trap >= 0) {
                out.traps[trap].region.hi = shi;
            } else {
                trap = static_cast<int>(out.traps.size());
                TrapDraft td;
                td.region.lo = slo;
                td.region.hi = shi;
                if (f >= 0) td.region.floor = cs[f];
                if (c >= 0) td.region.ceil = cs[c];
                out.traps.push_back(std::move(td));
            }
            cur.push_back({f, c, trap});
            out.slab_traps[s].push_back(trap);
        }
        prev = std::move(cur);
    }

    for (TrapDraft& td : out.traps) {
        for (int a : conflict)
            if (region_crossed(a, td.region)) td.conflict.push_back(a);
        out.max_conflict = std::max(out.max_conflict, static_cast<long>(td.conflict.size()));
    }
    return out;
}

int TrapCutting::child_in_slab(const TrapNode& nd, int slab, const Rat& x, const Rat& y) const {
    const std::vector<int>& col = nd.slab_children[slab];
    int lo = 0, hi = static_cast<int>(col.size()) - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        const TrapNode& ch = nodes_[col[mid]];
        if (!ch.region.ceil || compare(curve_eval(*ch.region.ceil, x), y) >= 0)
            hi = mid;
        else
            lo = mid + 1;
    }
    return col[lo];
}

std::vector<int> TrapCutting::locate(const Point2& p) const {
    std::vector<int> path{0};
    while (!nodes_[path.back()].leaf) {
        const TrapNode& nd = nodes_[path.back()];
        int s = static_cast<int>(
            std::lower_bound(nd.walls.begin(), nd.walls.end(), p.x,
                             [](const RootExt& w, const Rat& x) { return compare(w, x) < 0; }) -
            nd.walls.begin());
        path.push_back(child_in_slab(nd, s, p.x, p.y));
    }
    return path;
}

std::vector<int> TrapCutting::locate_ext(const RootExt& x, const Rat& y) const {
    if (!lines_only_)
        throw std::logic_error("locate_ext: supported for line-only cuttings");
    std::vector<int> path{0};
    while (!nodes_[path.back()].leaf) {
        const TrapNode& nd = nodes_[path.back()];
        int s = static_cast<int>(
            std::lower_bound(nd.walls.begin(), nd.walls.end(), x,
                             [](const RootExt& w, const RootExt& q) { return compare(w, q) < 0; }) -
            nd.walls.begin());
        const std::vector<int>& col = nd.slab_children[s];
        int lo = 0, hi = static_cast<int>(col.size()) - 1;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            const TrapNode& ch = nodes_[col[mid]];
            if (!ch.region.ceil || compare(curve_eval_ext(*ch.region.ceil, x), y) >= 0)
                hi = mid;
            else
                lo = mid + 1;
        }
        path.push_back(col[lo]);
    }
    return path;
}

}  // namespace trishoot
