#include "trishoot/arc_structure.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trishoot {
namespace {

// ---------------------------------------------------------------------------
// lazy slot: double-checked, thread-safe, build-once
// ---------------------------------------------------------------------------

template <typename T>
class Lazy {
  public:
    template <typename F>
    const T& get(F&& make) const {
        if (!built_.load(std::memory_order_acquire)) {
            std::lock_guard<std::mutex> lock(mu_);
            if (!built_.load(std::memory_order_relaxed)) {
                val_ = make();
                built_.store(true, std::memory_order_release);
            }
        }
        return val_;
    }

  private:
    mutable std::atomic<bool> built_{false};
    mutable std::mutex mu_;
    mutable T val_{};
};

struct StatsReg {
    mutable std::mutex mu;
    mutable std::vector<const TrapCutting*> cuts;
    mutable std::atomic<int> envelopes{0};

    void add_cut(const TrapCutting* c) const {
        std::lock_guard<std::mutex> lock(mu);
        cuts.push_back(c);
    }
    void add_env() const { envelopes.fetch_add(1, std::memory_order_relaxed); }
};

// One structure half: only graph-convex arcs (segments and lower circular
// arcs) with rational endpoint heights live here; the other half holds the
// origin-reflected concave arcs. input_idx maps back to the build vector.
struct PartCtx {
    std::vector<Arc2> arcs;
    std::vector<int> input_idx;
    std::vector<Rat> uyr, vyr;  // rational endpoint heights
    ArcStructureConfig cfg;
    const StatsReg* reg = nullptr;
};

// ---------------------------------------------------------------------------
// tangent-slope envelopes
//
// Every arc here is graph-convex, so its tangent slope is nondecreasing over
// the span; circular arcs reach -inf / +inf exactly at horizontal-diameter
// endpoints. Two slope curves swap order at most once, and the swap abscissa
// is rational (circle/circle) or one-radical (circle/segment), so the lower
// and upper envelopes are plain divide-and-merge piece lists.
// ---------------------------------------------------------------------------

int slope_class(const Arc2& a, const Rat& x, RootExt* out) {
    std::optional<RootExt> s = a.slope_at(x);
    if (s) {
        *out = *s;
        return 0;
    }
    return x == a.ux() ? -1 : 1;
}

struct SlopeEnv {
    const PartCtx* ctx = nullptr;
    bool maximize = false;
    struct Piece {
        std::optional<RootExt> from;  // nullopt on the first piece only
        int arc = -1;                 // part-local owner, -1 where nothing is defined
    };
    std::vector<Piece> pieces;
};

int cmp_slope_at(const PartCtx& ctx, int i, int j, const Rat& x) {
    RootExt si, sj;
    int ci = slope_class(ctx.arcs[i], x, &si);
    int cj = slope_class(ctx.arcs[j], x, &sj);
    if (ci != cj) return ci < cj ? -1 : 1;
    if (ci != 0) return 0;
    return compare(si, sj);
}

std::optional<RootExt> slope_cross(const Arc2& A, const Arc2& B) {
    bool ca = A.kind == ArcKind::Circle;
    bool cb = B.kind == ArcKind::Circle;
    if (!ca && !cb) return std::nullopt;  // constant slopes never swap order
    if (ca && cb) {
        if (A.radius == B.radius) return std::nullopt;
        Rat xs((A.center.x * B.radius - B.center.x * A.radius) / (B.radius - A.radius));
        Rat d1(xs - A.center.x), d2(xs - B.center.x);
        if (sign(d1) * sign(d2) < 0) return std::nullopt;  // squaring artifact
        if (rat_abs(d1) >= A.radius || rat_abs(d2) >= B.radius) return std::nullopt;
        return RootExt(xs);
    }
    const Arc2& C = ca ? A : B;
    const Arc2& S = ca ? B : A;
    Rat as((S.b.y - S.a.y) / (S.b.x - S.a.x));
    Rat w(1 + as * as);
    return RootExt(C.center.x, Rat(as * C.radius / w), w);
}

SlopeEnv env_merge(const PartCtx& ctx, const SlopeEnv& A, const SlopeEnv& B, bool maximize) {
    SlopeEnv out;
    out.ctx = &ctx;
    out.maximize = maximize;
    std::vector<RootExt> bks;
    for (std::size_t k = 1; k < A.pieces.size(); ++k) bks.push_back(*A.pieces[k].from);
    for (std::size_t k = 1; k < B.pieces.size(); ++k) bks.push_back(*B.pieces[k].from);
    std::sort(bks.begin(), bks.end(),
              [](const RootExt& x, const RootExt& y) { return compare(x, y) < 0; });
    bks.erase(std::unique(bks.begin(), bks.end(),
                          [](const RootExt& x, const RootExt& y) { return compare(x, y) == 0; }),
              bks.end());

    auto push = [&](std::optional<RootExt> from, int arc) {
        if (!out.pieces.empty() && out.pieces.back().arc == arc) return;
        out.pieces.push_back(SlopeEnv::Piece{std::move(from), arc});
    };

    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k <= bks.size(); ++k) {
        std::optional<RootExt> start =
            k == 0 ? std::optional<RootExt>() : std::optional<RootExt>(bks[k - 1]);
        std::optional<RootExt> end =
            k == bks.size() ? std::optional<RootExt>() : std::optional<RootExt>(bks[k]);
        if (k > 0) {
            while (ia + 1 < A.pieces.size() && compare(*A.pieces[ia + 1].from, *start) <= 0) ++ia;
            while (ib + 1 < B.pieces.size() && compare(*B.pieces[ib + 1].from, *start) <= 0) ++ib;
        }
        int o1 = A.pieces[ia].arc;
        int o2 = B.pieces[ib].arc;
        if (o1 < 0 && o2 < 0) {
            push(std::move(start), -1);
            continue;
        }
        if (o1 < 0 || o2 < 0) {
            push(std::move(start), o1 < 0 ? o2 : o1);
            continue;
        }
        auto pick = [&](const Rat& x) {
            int c = cmp_slope_at(ctx, o1, o2, x);
            if (maximize) c = -c;
            if (c < 0) return o1;
            if (c > 0) return o2;
            return std::min(o1, o2);
        };
        std::optional<RootExt> cross = slope_cross(ctx.arcs[o1], ctx.arcs[o2]);
        bool inside = cross && (!start || compare(*cross, *start) > 0) &&
                      (!end || compare(*cross, *end) < 0);
        if (!inside) {
            int w = pick(probe_x_in(start, end));
            push(std::move(start), w);
            continue;
        }
        int wl = pick(probe_x_in(start, cross));
        int wr = pick(probe_x_in(cross, end));
        push(std::move(start), wl);
        if (wr != wl) push(cross, wr);  // re-probed: a touch without a swap stays one piece
    }
    return out;
}

SlopeEnv build_slope_env(const PartCtx& ctx, const std::vector<int>& arcs, bool maximize) {
    std::function<SlopeEnv(std::size_t, std::size_t)> rec = [&](std::size_t lo,
                                                                std::size_t hi) -> SlopeEnv {
        if (hi - lo == 1) {
            SlopeEnv e;
            e.ctx = &ctx;
            e.maximize = maximize;
            const Arc2& a = ctx.arcs[arcs[lo]];
            e.pieces.push_back(SlopeEnv::Piece{std::nullopt, -1});
            e.pieces.push_back(SlopeEnv::Piece{RootExt(a.ux()), arcs[lo]});
            e.pieces.push_back(SlopeEnv::Piece{RootExt(a.vx()), -1});
            return e;
        }
        std::size_t mid = (lo + hi) / 2;
        return env_merge(ctx, rec(lo, mid), rec(mid, hi), maximize);
    };
    return rec(0, arcs.size());
}

// Is there an arc (defined at x) whose tangent slope at x is strictly less
// (less=true) / strictly greater than aq? Infinite slopes at diameter
// endpoints count as -inf / +inf. Only the piece owner and its left neighbor
// can attain the envelope value at x.
bool slope_env_exist(const SlopeEnv& e, const Rat& x, const Rat& aq, bool less) {
    if (e.pieces.empty()) return false;
    std::size_t lo = 1, hi = e.pieces.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (compare(*e.pieces[mid].from, x) <= 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    std::size_t idx = lo - 1;
    int cand[2] = {e.pieces[idx].arc, -1};
    if (idx > 0 && e.pieces[idx].from && compare(*e.pieces[idx].from, x) == 0)
        cand[1] = e.pieces[idx - 1].arc;
    for (int c : cand) {
        if (c < 0) continue;
        const Arc2& arc = e.ctx->arcs[c];
        if (x < arc.ux() || x > arc.vx()) continue;
        RootExt s;
        int cls = slope_class(arc, x, &s);
        if (less) {
            if (cls < 0 || (cls == 0 && compare(s, aq) < 0)) return true;
        } else {
            if (cls > 0 || (cls == 0 && compare(s, aq) > 0)) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// envelopes of rational lines (endpoint duals y = -k_x * a + k_y and circle
// tangency-abscissa lines y = -r * m + c_x)
// ---------------------------------------------------------------------------

struct LineEnv {
    std::vector<Rat> ms, cs;  // hull pieces, left to right
    std::vector<Rat> bks;     // breakpoints between consecutive pieces
};

LineEnv build_line_env(std::vector<std::pair<Rat, Rat>> lines, bool maximize) {
    if (maximize)
        for (auto& l : lines) {
            l.first = Rat(-l.first);
            l.second = Rat(-l.second);
        }
    std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    lines.erase(std::unique(lines.begin(), lines.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                lines.end());
    std::vector<std::pair<Rat, Rat>> h;
    std::vector<Rat> bx;
    for (const auto& l : lines) {
        Rat xb(0);
        while (!h.empty()) {
            xb = Rat((l.second - h.back().second) / (h.back().first - l.first));
            if (!bx.empty() && xb <= bx.back()) {
                h.pop_back();
                bx.pop_back();
            } else {
                break;
            }
        }
        if (!h.empty()) bx.push_back(xb);
        h.push_back(l);
    }
    LineEnv e;
    e.bks = std::move(bx);
    for (auto& l : h) {
        e.ms.push_back(maximize ? Rat(-l.first) : l.first);
        e.cs.push_back(maximize ? Rat(-l.second) : l.second);
    }
    return e;
}

RootExt line_env_eval(const LineEnv& e, const RootExt& x) {
    std::size_t lo = 0, hi = e.bks.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (compare(x, e.bks[mid]) <= 0)
            hi = mid;
        else
            lo = mid + 1;
    }
    return (x * e.ms[lo]) + e.cs[lo];
}

// ---------------------------------------------------------------------------
// level machinery: every interior node of every cutting owns a lazily built
// LevelSet exposing the next filters of the cascade
// ---------------------------------------------------------------------------

struct LevelSet;
struct PointCut;
struct StripCut;
struct DualCut;
struct SpanTree;

using LevelPtr = std::unique_ptr<LevelSet>;

LevelPtr make_level_set(const PartCtx* ctx, std::vector<int> arcs);

// Arcs of one set ordered by one endpoint abscissa; dyadic blocks carry a
// min-vx aggregate and a lazy LevelSet for cascade continuations.
struct KeyBlocks {
    const PartCtx* ctx;
    std::vector<Rat> keys;
    std::vector<int> arcs;  // part-local, aligned with keys
    struct Node {
        int lo = 0, hi = 0;
        int left = -1, right = -1;
        Rat min_vx;
        Lazy<LevelPtr> set;
    };
    std::deque<Node> nodes;

    KeyBlocks(const PartCtx* c, const std::vector<int>& src, bool key_ux) : ctx(c) {
        arcs = src;
        std::sort(arcs.begin(), arcs.end(), [&](int i, int j) {
            const Rat& ki = key_ux ? ctx->arcs[i].ux() : ctx->arcs[i].vx();
            const Rat& kj = key_ux ? ctx->arcs[j].ux() : ctx->arcs[j].vx();
            if (ki != kj) return ki < kj;
            return i < j;
        });
        keys.reserve(arcs.size());
        for (int j : arcs) keys.push_back(key_ux ? ctx->arcs[j].ux() : ctx->arcs[j].vx());
        if (!arcs.empty()) build(0, static_cast<int>(arcs.size()));
    }

    int build(int lo, int hi) {
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[id].lo = lo;
        nodes[id].hi = hi;
        if (hi - lo == 1) {
            nodes[id].min_vx = ctx->arcs[arcs[lo]].vx();
        } else {
            int mid = (lo + hi) / 2;
            int l = build(lo, mid);
            int r = build(mid, hi);
            nodes[id].left = l;
            nodes[id].right = r;
            nodes[id].min_vx = std::min(nodes[l].min_vx, nodes[r].min_vx);
        }
        return id;
    }

    int pos_lower(const Rat& x) const {
        return static_cast<int>(std::lower_bound(keys.begin(), keys.end(), x) - keys.begin());
    }
    int pos_upper(const Rat& x) const {
        return static_cast<int>(std::upper_bound(keys.begin(), keys.end(), x) - keys.begin());
    }
};

// Visit the canonical blocks covering position range [lo, hi); fn returning
// true stops the walk (a witness was found).
template <typename Fn>
bool kb_visit(const KeyBlocks& kb, int lo, int hi, Fn&& fn) {
    if (kb.nodes.empty() || lo >= hi) return false;
    std::vector<int> st{0};
    while (!st.empty()) {
        int id = st.back();
        st.pop_back();
        const KeyBlocks::Node& nd = kb.nodes[id];
        if (nd.hi <= lo || hi <= nd.lo) continue;
        if (lo <= nd.lo && nd.hi <= hi) {
            if (fn(nd)) return true;
            continue;
        }
        if (nd.left >= 0) st.push_back(nd.left);
        if (nd.right >= 0) st.push_back(nd.right);
    }
    return false;
}

const LevelSet& kb_set(const KeyBlocks& kb, const KeyBlocks::Node& nd) {
    return *nd.set.get([&] {
        return make_level_set(kb.ctx,
                              std::vector<int>(kb.arcs.begin() + nd.lo, kb.arcs.begin() + nd.hi));
    });
}

std::vector<TrapCutting::Contains> below_above_channels(const PartCtx* ctx,
                                                        std::vector<int> arcs) {
    auto rel = [ctx, arcs = std::move(arcs)](int i, const Point2& p, int want) {
        const Arc2& a = ctx->arcs[arcs[i]];
        if (p.x < a.ux() || p.x > a.vx()) return false;
        return point_vs_arc(a, p) == want;
    };
    std::vector<TrapCutting::Contains> ch;
    ch.emplace_back([rel](int i, const Point2& p) { return rel(i, p, -1); });
    ch.emplace_back([rel](int i, const Point2& p) { return rel(i, p, 1); });
    return ch;
}

// Cutting of the full plane by arc graphs plus their endpoint verticals;
// channels split a set by "query point strictly below / strictly above the
// arc within its span".
struct PointCut {
    const PartCtx* ctx;
    std::vector<int> arcs;
    TrapCutting cut;
    std::vector<std::array<Lazy<LevelPtr>, 2>> kids;

    PointCut(const PartCtx* c, std::vector<int> a)
        : ctx(c),
          arcs(std::move(a)),
          cut(static_cast<int>(arcs.size()),
              [this](int i) {
                  const Arc2* arc = &ctx->arcs[arcs[i]];
                  return std::vector<CutCurve>{CutCurve::graph(arc), CutCurve::vline(arc->ux()),
                                               CutCurve::vline(arc->vx())};
              },
              below_above_channels(c, arcs), c->cfg.cutting),
          kids(static_cast<std::size_t>(cut.node_count())) {
        ctx->reg->add_cut(&cut);
    }
};

const LevelSet& pcut_kid(const PointCut& pc, int node, int ch) {
    return *pc.kids[node][ch].get([&] {
        std::vector<int> sub;
        for (int i : pc.cut.node(node).added[ch]) sub.push_back(pc.arcs[i]);
        return make_level_set(pc.ctx, std::move(sub));
    });
}

// Cutting confined to one vertical strip all member arcs span; graphs alone
// bound the below/above regions there.
struct StripCut {
    const PartCtx* ctx;
    std::vector<int> arcs;
    TrapCutting cut;
    std::vector<std::array<Lazy<LevelPtr>, 2>> kids;

    static CuttingConfig strip_cfg(const PartCtx* c, TrapRegion root) {
        CuttingConfig cfg = c->cfg.cutting;
        cfg.root = std::move(root);
        return cfg;
    }

    StripCut(const PartCtx* c, std::vector<int> a, TrapRegion root)
        : ctx(c),
          arcs(std::move(a)),
          cut(static_cast<int>(arcs.size()),
              [this](int i) {
                  return std::vector<CutCurve>{CutCurve::graph(&ctx->arcs[arcs[i]])};
              },
              below_above_channels(c, arcs), strip_cfg(c, std::move(root))),
          kids(static_cast<std::size_t>(cut.node_count())) {
        ctx->reg->add_cut(&cut);
    }
};

const LevelSet& strip_kid(const StripCut& sc, int node, int ch) {
    return *sc.kids[node][ch].get([&] {
        std::vector<int> sub;
        for (int i : sc.cut.node(node).added[ch]) sub.push_back(sc.arcs[i]);
        return make_level_set(sc.ctx, std::move(sub));
    });
}

// Line cuttings in the query-line plane (a, b). Kinds:
//   0  boundary b = -ux*a + uy, channel "endpoint u on or above the line"
//   1  boundary b = -vx*a + vy, channel "endpoint v on or above the line"
//   2  boundary y = -r*m + cx over circles, channel "tangency abscissa
//      strictly right of the query ordinate" (queried at one-radical m)
struct DualCut {
    const PartCtx* ctx;
    std::vector<int> arcs;
    int kind;
    TrapCutting cut;
    std::vector<Lazy<LevelPtr>> kids;

    DualCut(const PartCtx* c, std::vector<int> a, int k)
        : ctx(c),
          arcs(std::move(a)),
          kind(k),
          cut(static_cast<int>(arcs.size()), [this](int i) { return curves(i); },
              {channel(c, arcs, k)}, c->cfg.cutting),
          kids(static_cast<std::size_t>(cut.node_count())) {
        ctx->reg->add_cut(&cut);
    }

    std::vector<CutCurve> curves(int i) const {
        const Arc2& a = ctx->arcs[arcs[i]];
        if (kind == 0) return {CutCurve::rline(Rat(-a.ux()), ctx->uyr[arcs[i]])};
        if (kind == 1) return {CutCurve::rline(Rat(-a.vx()), ctx->vyr[arcs[i]])};
        return {CutCurve::rline(Rat(-a.radius), a.center.x)};
    }

    static TrapCutting::Contains channel(const PartCtx* ctx, std::vector<int> arcs, int kind) {
        return [ctx, arcs = std::move(arcs), kind](int i, const Point2& p) {
            const Arc2& a = ctx->arcs[arcs[i]];
            if (kind == 0) return Rat(ctx->uyr[arcs[i]] - p.x * a.ux() - p.y) >= 0;
            if (kind == 1) return Rat(ctx->vyr[arcs[i]] - p.x * a.vx() - p.y) >= 0;
            return Rat(a.center.x - a.radius * p.x - p.y) > 0;
        };
    }
};

const LevelSet& dual_kid(const DualCut& dc, int node) {
    return *dc.kids[node].get([&] {
        std::vector<int> sub;
        for (int i : dc.cut.node(node).added[0]) sub.push_back(dc.arcs[i]);
        return make_level_set(dc.ctx, std::move(sub));
    });
}

// Interval tree over arc x-spans. Leaves alternate gap/point over the sorted
// endpoint abscissae; every arc sits on O(log) canonical nodes, each of which
// lazily owns a strip cutting clipped to the node interval. Stabbing at x
// yields disjoint groups that together hold exactly the arcs whose span
// contains x.
struct SpanTree {
    const PartCtx* ctx;
    std::vector<Rat> coords;
    struct Node {
        int llo = 0, lhi = 0;
        int left = -1, right = -1;
        std::optional<Rat> xlo, xhi;
        std::vector<int> arcs;
        Lazy<std::unique_ptr<StripCut>> strip;

        bool degenerate() const { return xlo && xhi && *xlo == *xhi; }
    };
    std::deque<Node> nodes;

    SpanTree(const PartCtx* c, const std::vector<int>& src) : ctx(c) {
        for (int j : src) {
            coords.push_back(ctx->arcs[j].ux());
            coords.push_back(ctx->arcs[j].vx());
        }
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        int m = static_cast<int>(coords.size());
        build(0, 2 * m);
        for (int j : src) {
            int li = 2 * pos(ctx->arcs[j].ux()) + 1;
            int ri = 2 * pos(ctx->arcs[j].vx()) + 1;
            insert(0, li, ri, j);
        }
    }

    int pos(const Rat& x) const {
        return static_cast<int>(std::lower_bound(coords.begin(), coords.end(), x) -
                                coords.begin());
    }

    std::optional<Rat> leaf_lo(int j) const {
        if (j % 2 == 1) return coords[(j - 1) / 2];
        return j == 0 ? std::optional<Rat>() : std::optional<Rat>(coords[j / 2 - 1]);
    }
    std::optional<Rat> leaf_hi(int j) const {
        if (j % 2 == 1) return coords[(j - 1) / 2];
        return j / 2 == static_cast<int>(coords.size()) ? std::optional<Rat>()
                                                        : std::optional<Rat>(coords[j / 2]);
    }

    int build(int llo, int lhi) {
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[id].llo = llo;
        nodes[id].lhi = lhi;
        nodes[id].xlo = leaf_lo(llo);
        nodes[id].xhi = leaf_hi(lhi);
        if (llo < lhi) {
            int mid = (llo + lhi) / 2;
            int l = build(llo, mid);
            int r = build(mid + 1, lhi);
            nodes[id].left = l;
            nodes[id].right = r;
        }
        return id;
    }

    void insert(int id, int li, int ri, int arc) {
        Node& nd = nodes[id];
        if (li <= nd.llo && nd.lhi <= ri) {
            nd.arcs.push_back(arc);
            return;
        }
        if (nd.left < 0) return;
        int mid = (nd.llo + nd.lhi) / 2;
        if (li <= mid) insert(nd.left, li, ri, arc);
        if (ri > mid) insert(nd.right, li, ri, arc);
    }

    void stab(const Rat& x, std::vector<int>& out) const {
        if (nodes.empty()) return;
        int m = static_cast<int>(coords.size());
        int cnt = pos(x);
        int leaf = (cnt < m && coords[cnt] == x) ? 2 * cnt + 1 : 2 * cnt;
        int id = 0;
        while (true) {
            out.push_back(id);
            const Node& nd = nodes[id];
            if (nd.left < 0) break;
            int mid = (nd.llo + nd.lhi) / 2;
            id = leaf <= mid ? nd.left : nd.right;
        }
    }
};

const StripCut& span_strip(const SpanTree& sp, int id) {
    const SpanTree::Node& nd = sp.nodes[id];
    return *nd.strip.get([&] {
        TrapRegion root;
        if (nd.xlo) root.lo = RootExt(*nd.xlo);
        if (nd.xhi) root.hi = RootExt(*nd.xhi);
        return std::make_unique<StripCut>(sp.ctx, nd.arcs, std::move(root));
    });
}

// One canonical arc set plus every lazily materialized filter over it.
struct LevelSet {
    const PartCtx* ctx = nullptr;
    std::vector<int> arcs;
    Rat max_ux, min_vx;

    Lazy<std::unique_ptr<SlopeEnv>> env_min, env_max;
    Lazy<std::unique_ptr<LineEnv>> u_env, v_env, d_env;
    Lazy<std::unique_ptr<KeyBlocks>> by_ux, by_vx;
    Lazy<std::unique_ptr<PointCut>> pcut;
    Lazy<std::unique_ptr<SpanTree>> span;
    Lazy<std::unique_ptr<DualCut>> ucut, vcut, dcut;

    bool small() const {
        return static_cast<int>(arcs.size()) <= ctx->cfg.direct_cutoff;
    }
};

LevelPtr make_level_set(const PartCtx* ctx, std::vector<int> arcs) {
    auto L = std::make_unique<LevelSet>();
    L->ctx = ctx;
    L->arcs = std::move(arcs);
    bool first = true;
    for (int j : L->arcs) {
        const Arc2& a = ctx->arcs[j];
        if (first || a.ux() > L->max_ux) L->max_ux = a.ux();
        if (first || a.vx() < L->min_vx) L->min_vx = a.vx();
        first = false;
    }
    return L;
}

const SlopeEnv& get_env(const LevelSet& L, bool maximize) {
    const Lazy<std::unique_ptr<SlopeEnv>>& slot = maximize ? L.env_max : L.env_min;
    return *slot.get([&] {
        L.ctx->reg->add_env();
        return std::make_unique<SlopeEnv>(build_slope_env(*L.ctx, L.arcs, maximize));
    });
}

const LineEnv& get_endpoint_env(const LevelSet& L, bool at_v) {
    const Lazy<std::unique_ptr<LineEnv>>& slot = at_v ? L.v_env : L.u_env;
    return *slot.get([&] {
        L.ctx->reg->add_env();
        std::vector<std::pair<Rat, Rat>> lines;
        for (int j : L.arcs) {
            const Arc2& a = L.ctx->arcs[j];
            lines.emplace_back(at_v ? Rat(-a.vx()) : Rat(-a.ux()),
                               at_v ? L.ctx->vyr[j] : L.ctx->uyr[j]);
        }
        return std::make_unique<LineEnv>(build_line_env(std::move(lines), true));
    });
}

const LineEnv& get_d_env(const LevelSet& L) {
    return *L.d_env.get([&] {
        L.ctx->reg->add_env();
        std::vector<std::pair<Rat, Rat>> lines;
        for (int j : L.arcs) {
            const Arc2& a = L.ctx->arcs[j];
            if (a.kind == ArcKind::Circle) lines.emplace_back(Rat(-a.radius), a.center.x);
        }
        return std::make_unique<LineEnv>(build_line_env(std::move(lines), false));
    });
}

const KeyBlocks& get_keyed(const LevelSet& L, bool key_ux) {
    const Lazy<std::unique_ptr<KeyBlocks>>& slot = key_ux ? L.by_ux : L.by_vx;
    return *slot.get([&] { return std::make_unique<KeyBlocks>(L.ctx, L.arcs, key_ux); });
}

const PointCut& get_pcut(const LevelSet& L) {
    return *L.pcut.get([&] { return std::make_unique<PointCut>(L.ctx, L.arcs); });
}

const SpanTree& get_span(const LevelSet& L) {
    return *L.span.get([&] { return std::make_unique<SpanTree>(L.ctx, L.arcs); });
}

const DualCut& get_dual(const LevelSet& L, int kind) {
    const Lazy<std::unique_ptr<DualCut>>& slot =
        kind == 0 ? L.ucut : (kind == 1 ? L.vcut : L.dcut);
    return *slot.get([&] {
        std::vector<int> src = L.arcs;
        if (kind == 2) {
            src.clear();
            for (int j : L.arcs)
                if (L.ctx->arcs[j].kind == ArcKind::Circle) src.push_back(j);
        }
        return std::make_unique<DualCut>(L.ctx, std::move(src), kind);
    });
}

// ---------------------------------------------------------------------------
// whole-input vertical stabbing index (queries at x = const)
// ---------------------------------------------------------------------------

struct VertIndex {
    std::vector<int> order;  // input indices by ux
    std::vector<Rat> keys;   // ux in order
    std::vector<Rat> vmax;   // segment-tree max of vx over order positions
    int n = 0;

    void init(const std::vector<Arc2>& arcs) {
        n = static_cast<int>(arcs.size());
        order.resize(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            if (arcs[i].ux() != arcs[j].ux()) return arcs[i].ux() < arcs[j].ux();
            return i < j;
        });
        keys.reserve(n);
        for (int i : order) keys.push_back(arcs[i].ux());
        if (n > 0) {
            vmax.assign(static_cast<std::size_t>(4 * n), Rat(0));
            build(arcs, 1, 0, n - 1);
        }
    }

    void build(const std::vector<Arc2>& arcs, int k, int lo, int hi) {
        if (lo == hi) {
            vmax[k] = arcs[order[lo]].vx();
            return;
        }
        int mid = (lo + hi) / 2;
        build(arcs, 2 * k, lo, mid);
        build(arcs, 2 * k + 1, mid + 1, hi);
        vmax[k] = std::max(vmax[2 * k], vmax[2 * k + 1]);
    }

    // All input indices with ux <= x <= vx, output-sensitive.
    void stab(const Rat& x, std::vector<int>& out) const {
        if (n == 0) return;
        int limit = static_cast<int>(std::upper_bound(keys.begin(), keys.end(), x) -
                                     keys.begin());
        if (limit == 0) return;
        collect(x, limit, 1, 0, n - 1, out);
    }

    void collect(const Rat& x, int limit, int k, int lo, int hi, std::vector<int>& out) const {
        if (lo >= limit || vmax[k] < x) return;
        if (lo == hi) {
            out.push_back(order[lo]);
            return;
        }
        int mid = (lo + hi) / 2;
        collect(x, limit, 2 * k, lo, mid, out);
        if (mid + 1 < limit) collect(x, limit, 2 * k + 1, mid + 1, hi, out);
    }
};

// ---------------------------------------------------------------------------
// one structure half
// ---------------------------------------------------------------------------

struct Part {
    PartCtx ctx;
    bool reflected = false;
    std::unique_ptr<TrapCutting> line_cut;      // cutting of the (a, b) line plane
    std::vector<std::vector<int>> canon_input;  // per node: added arcs as input indices
    std::vector<Lazy<LevelPtr>> bundles;        // per node: added arcs as a LevelSet
    Lazy<std::unique_ptr<TrapCutting>> walk;    // primal graph cutting for shooting

    bool empty() const { return ctx.arcs.empty(); }
};

Rat rational_height(const Arc2& a, bool at_u) {
    if (a.kind == ArcKind::Segment) return at_u ? a.a.y : a.b.y;
    Rat d((at_u ? a.ux() : a.vx()) - a.center.x);
    std::optional<Rat> h = rat_perfect_sqrt(Rat(a.radius * a.radius - d * d));
    assert(h && a.side == ArcSide::Lower);
    return Rat(a.center.y - *h);
}

void build_part(Part& pt, const ArcStructureConfig& cfg, const StatsReg* reg) {
    PartCtx& ctx = pt.ctx;
    ctx.cfg = cfg;
    ctx.reg = reg;
    int n = static_cast<int>(ctx.arcs.size());
    ctx.uyr.reserve(n);
    ctx.vyr.reserve(n);
    for (const Arc2& a : ctx.arcs) {
        ctx.uyr.push_back(rational_height(a, true));
        ctx.vyr.push_back(rational_height(a, false));
    }
    if (n == 0) return;
    auto curves = [&ctx](int j) {
        const Arc2& a = ctx.arcs[j];
        std::vector<CutCurve> out;
        out.push_back(CutCurve::rline(Rat(-a.ux()), ctx.uyr[j]));
        out.push_back(CutCurve::rline(Rat(-a.vx()), ctx.vyr[j]));
        if (a.kind == ArcKind::Circle)
            out.push_back(CutCurve::branch(a.center.x, a.center.y, a.radius, -1));
        return out;
    };
    std::vector<TrapCutting::Contains> ch;
    const PartCtx* cp = &ctx;
    ch.emplace_back([cp](int j, const Point2& p) {
        return line_meets_arc(cp->arcs[j], Line2(p.x, p.y));
    });
    pt.line_cut = std::make_unique<TrapCutting>(n, curves, std::move(ch), cfg.cutting);
    reg->add_cut(pt.line_cut.get());
    pt.canon_input.resize(static_cast<std::size_t>(pt.line_cut->node_count()));
    for (int id = 0; id < pt.line_cut->node_count(); ++id) {
        for (int j : pt.line_cut->node(id).added[0])
            pt.canon_input[id].push_back(ctx.input_idx[j]);
        std::sort(pt.canon_input[id].begin(), pt.canon_input[id].end());
    }
    pt.bundles = std::vector<Lazy<LevelPtr>>(static_cast<std::size_t>(pt.line_cut->node_count()));
}

const LevelSet& part_bundle(const Part& pt, int node) {
    return *pt.bundles[node].get(
        [&] { return make_level_set(&pt.ctx, pt.line_cut->node(node).added[0]); });
}

const TrapCutting& part_walk(const Part& pt) {
    return *pt.walk.get([&] {
        const PartCtx* cp = &pt.ctx;
        auto cut = std::make_unique<TrapCutting>(
            static_cast<int>(cp->arcs.size()),
            [cp](int j) { return std::vector<CutCurve>{CutCurve::graph(&cp->arcs[j])}; },
            std::vector<TrapCutting::Contains>{}, cp->cfg.cutting);
        cp->reg->add_cut(cut.get());
        return cut;
    });
}

// ---------------------------------------------------------------------------
// ray emptiness cascade
//
// Bundles hold arcs the query line certainly meets, so only the apex-side
// conditions remain: apex before the near endpoint (span aggregates), or apex
// inside the span and below with a smaller tangent slope (strip filter plus
// slope envelope), or above with the far endpoint on or above the line
// (strip filter plus endpoint-dual envelope). Sets at or below the cutoff
// are scanned with the exact predicate, which subsumes every boundary case.
// ---------------------------------------------------------------------------

struct RayQuery {
    const PartCtx* ctx;
    Ray2 ray;
    Rat a, b;
    bool rightward;

    bool exact_one(int j) const { return ray_meets_arc(ctx->arcs[j], ray); }
    bool exact(const std::vector<int>& js) const {
        for (int j : js)
            if (exact_one(j)) return true;
        return false;
    }

    bool run(const LevelSet& L) const {
        if (L.arcs.empty()) return false;
        if (L.small()) return exact(L.arcs);
        if (rightward ? L.max_ux >= ray.apex.x : L.min_vx <= ray.apex.x) return true;
        const SpanTree& sp = get_span(L);
        std::vector<int> path;
        sp.stab(ray.apex.x, path);
        for (int nid : path) {
            const SpanTree::Node& N = sp.nodes[nid];
            if (N.arcs.empty()) continue;
            if (static_cast<int>(N.arcs.size()) <= ctx->cfg.direct_cutoff || N.degenerate()) {
                if (exact(N.arcs)) return true;
                continue;
            }
            const StripCut& sc = span_strip(sp, nid);
            std::vector<int> cells = sc.cut.locate(ray.apex);
            for (int cid : cells) {
                const LevelSet& B = strip_kid(sc, cid, 0);
                if (!B.arcs.empty()) {
                    if (B.small()) {
                        if (exact(B.arcs)) return true;
                    } else if (slope_env_exist(get_env(B, !rightward), ray.apex.x, a,
                                               rightward)) {
                        return true;
                    }
                }
                const LevelSet& A = strip_kid(sc, cid, 1);
                if (!A.arcs.empty()) {
                    if (A.small()) {
                        if (exact(A.arcs)) return true;
                    } else {
                        const LineEnv& e = get_endpoint_env(A, rightward);
                        if (compare(line_env_eval(e, RootExt(a)), b) >= 0) return true;
                    }
                }
            }
            for (int i : sc.cut.node(cells.back()).conflict)
                if (exact_one(sc.arcs[i])) return true;
        }
        return false;
    }
};

// ---------------------------------------------------------------------------
// segment emptiness cascade
//
// With p.x < q.x and the supporting line known to meet every bundle arc, a
// hit decomposes by which endpoint-ray case applies on each side. The
// combinations and their terminals:
//   span containment   ux >= px and vx <= qx                    (guaranteed)
//   p below, vx in [px,qx]                slope(px) < a
//   p below, q below (circles)            tangency abscissa in (px, qx)
//   p below, vx > px, q above             u on/above line, slope(px) < a
//   p below, ux >= px, q above            u on/above line     (guaranteed)
//   ux in [px,qx], q below                slope(qx) > a
//   ux > px, q above                      u on/above line     (guaranteed)
//   p above, v on/above line, vx < qx                          (guaranteed)
//   p above, v on/above line, q below     vx <= qx guaranteed, else slope(qx) > a
// Every cutting traversal also scans its leaf conflict list exactly, which
// restores all on-boundary cases the open-set filters exclude.
// ---------------------------------------------------------------------------

struct SegQuery {
    const PartCtx* ctx;
    Point2 p, q;
    Rat a, b;
    RootExt neg_lambda;  // -a / sqrt(1 + a^2)

    bool exact_one(int j) const { return seg_meets_arc(ctx->arcs[j], p, q); }
    bool exact(const std::vector<int>& js) const {
        for (int j : js)
            if (exact_one(j)) return true;
        return false;
    }

    bool run(const LevelSet& L) const {
        if (L.arcs.empty()) return false;
        if (L.small()) return exact(L.arcs);
        const KeyBlocks& bu = get_keyed(L, true);
        bool found = kb_visit(bu, bu.pos_lower(p.x), static_cast<int>(bu.arcs.size()),
                              [&](const KeyBlocks::Node& nd) { return nd.min_vx <= q.x; });
        if (found) return true;

        const SpanTree& sp = get_span(L);
        std::vector<int> path;
        sp.stab(p.x, path);
        for (int nid : path) {
            const SpanTree::Node& N = sp.nodes[nid];
            if (N.arcs.empty()) continue;
            if (static_cast<int>(N.arcs.size()) <= ctx->cfg.direct_cutoff || N.degenerate()) {
                if (exact(N.arcs)) return true;
                continue;
            }
            const StripCut& sc = span_strip(sp, nid);
            std::vector<int> cells = sc.cut.locate(p);
            for (int cid : cells) {
                const LevelSet& B = strip_kid(sc, cid, 0);
                if (!B.arcs.empty() && below_cascades(B)) return true;
                const LevelSet& A = strip_kid(sc, cid, 1);
                if (!A.arcs.empty() && above_cascades(A)) return true;
            }
            for (int i : sc.cut.node(cells.back()).conflict)
                if (exact_one(sc.arcs[i])) return true;
        }

        // left arc endpoint inside the segment's x-range
        found = kb_visit(bu, bu.pos_lower(p.x), bu.pos_upper(q.x),
                         [&](const KeyBlocks::Node& nd) { return c4_tail(kb_set(bu, nd)); });
        if (found) return true;
        return kb_visit(bu, bu.pos_upper(p.x), static_cast<int>(bu.arcs.size()),
                        [&](const KeyBlocks::Node& nd) { return c7_tail(kb_set(bu, nd)); });
    }

    // S: p strictly below every arc, px inside every span.
    bool below_cascades(const LevelSet& B) const {
        if (B.small()) return exact(B.arcs);
        const KeyBlocks& bv = get_keyed(B, false);
        bool found = kb_visit(bv, bv.pos_lower(p.x), bv.pos_upper(q.x),
                              [&](const KeyBlocks::Node& nd) { return c2_set(kb_set(bv, nd)); });
        if (found) return true;

        const PointCut& pc = get_pcut(B);
        std::vector<int> cells = pc.cut.locate(q);
        for (int cid : cells) {
            const LevelSet& B2 = pcut_kid(pc, cid, 0);
            if (!B2.arcs.empty() && c3_qbelow(B2)) return true;
        }
        for (int i : pc.cut.node(cells.back()).conflict)
            if (exact_one(pc.arcs[i])) return true;

        found = kb_visit(bv, bv.pos_upper(p.x), static_cast<int>(bv.arcs.size()),
                         [&](const KeyBlocks::Node& nd) { return c6_tail(kb_set(bv, nd)); });
        if (found) return true;
        const KeyBlocks& bu = get_keyed(B, true);
        return kb_visit(bu, bu.pos_lower(p.x), static_cast<int>(bu.arcs.size()),
                        [&](const KeyBlocks::Node& nd) { return c7_tail(kb_set(bu, nd)); });
    }

    // S: p strictly above every arc, px inside every span.
    bool above_cascades(const LevelSet& A) const {
        if (A.small()) return exact(A.arcs);
        const DualCut& vc = get_dual(A, 1);
        std::vector<int> cells = vc.cut.locate(Point2(a, b));
        for (int cid : cells) {
            const LevelSet& V = dual_kid(vc, cid);
            if (V.arcs.empty()) continue;
            if (V.small()) {
                if (exact(V.arcs)) return true;
                continue;
            }
            if (V.min_vx < q.x) return true;
            const PointCut& pc = get_pcut(V);
            std::vector<int> cells2 = pc.cut.locate(q);
            for (int cid2 : cells2) {
                const LevelSet& B4 = pcut_kid(pc, cid2, 0);
                if (B4.arcs.empty()) continue;
                if (B4.small()) {
                    if (exact(B4.arcs)) return true;
                    continue;
                }
                if (B4.min_vx <= q.x) return true;
                if (slope_env_exist(get_env(B4, true), q.x, a, false)) return true;
            }
            for (int i : pc.cut.node(cells2.back()).conflict)
                if (exact_one(pc.arcs[i])) return true;
        }
        for (int i : vc.cut.node(cells.back()).conflict)
            if (exact_one(vc.arcs[i])) return true;
        return false;
    }

    bool c2_set(const LevelSet& S) const {
        if (S.arcs.empty()) return false;
        if (S.small()) return exact(S.arcs);
        return slope_env_exist(get_env(S, false), p.x, a, true);
    }

    // S: p and q strictly below; only circles can satisfy both strict slope
    // conditions, and for a circle they pin the tangency abscissa to (px, qx).
    bool c3_qbelow(const LevelSet& S) const {
        if (S.small()) return exact(S.arcs);
        const DualCut& dc = get_dual(S, 2);
        if (dc.arcs.empty()) return false;
        std::vector<int> cells = dc.cut.locate_ext(neg_lambda, p.x);
        for (int cid : cells) {
            const LevelSet& D = dual_kid(dc, cid);
            if (D.arcs.empty()) continue;
            if (D.small()) {
                if (exact(D.arcs)) return true;
                continue;
            }
            if (compare(line_env_eval(get_d_env(D), neg_lambda), q.x) < 0) return true;
        }
        for (int i : dc.cut.node(cells.back()).conflict)
            if (exact_one(dc.arcs[i])) return true;
        return false;
    }

    // S: ux inside [px, qx]; hits need q strictly below with slope(qx) > a.
    bool c4_tail(const LevelSet& S) const {
        if (S.arcs.empty()) return false;
        if (S.small()) return exact(S.arcs);
        const PointCut& pc = get_pcut(S);
        std::vector<int> cells = pc.cut.locate(q);
        for (int cid : cells) {
            const LevelSet& B6 = pcut_kid(pc, cid, 0);
            if (B6.arcs.empty()) continue;
            if (B6.small()) {
                if (exact(B6.arcs)) return true;
                continue;
            }
            if (slope_env_exist(get_env(B6, true), q.x, a, false)) return true;
        }
        for (int i : pc.cut.node(cells.back()).conflict)
            if (exact_one(pc.arcs[i])) return true;
        return false;
    }

    // S: vx > px, p strictly below; hits need q strictly above with endpoint
    // u on or above the line and slope(px) < a.
    bool c6_tail(const LevelSet& S) const {
        if (S.arcs.empty()) return false;
        if (S.small()) return exact(S.arcs);
        const PointCut& pc = get_pcut(S);
        std::vector<int> cells = pc.cut.locate(q);
        for (int cid : cells) {
            const LevelSet& A2 = pcut_kid(pc, cid, 1);
            if (A2.arcs.empty()) continue;
            if (A2.small()) {
                if (exact(A2.arcs)) return true;
                continue;
            }
            const DualCut& uc = get_dual(A2, 0);
            std::vector<int> cells2 = uc.cut.locate(Point2(a, b));
            for (int cid2 : cells2) {
                const LevelSet& U = dual_kid(uc, cid2);
                if (U.arcs.empty()) continue;
                if (U.small()) {
                    if (exact(U.arcs)) return true;
                    continue;
                }
                if (slope_env_exist(get_env(U, false), p.x, a, true)) return true;
            }
            for (int i : uc.cut.node(cells2.back()).conflict)
                if (exact_one(uc.arcs[i])) return true;
        }
        for (int i : pc.cut.node(cells.back()).conflict)
            if (exact_one(pc.arcs[i])) return true;
        return false;
    }

    // S: near endpoint right of px; q strictly above plus u on or above the
    // line makes the hit unconditional.
    bool c7_tail(const LevelSet& S) const {
        if (S.arcs.empty()) return false;
        if (S.small()) return exact(S.arcs);
        const PointCut& pc = get_pcut(S);
        std::vector<int> cells = pc.cut.locate(q);
        for (int cid : cells) {
            const LevelSet& A3 = pcut_kid(pc, cid, 1);
            if (A3.arcs.empty()) continue;
            if (A3.small()) {
                if (exact(A3.arcs)) return true;
                continue;
            }
            const DualCut& uc = get_dual(A3, 0);
            std::vector<int> cells2 = uc.cut.locate(Point2(a, b));
            for (int cid2 : cells2) {
                const LevelSet& U = dual_kid(uc, cid2);
                if (!U.arcs.empty()) return true;
            }
            for (int i : uc.cut.node(cells2.back()).conflict)
                if (exact_one(uc.arcs[i])) return true;
        }
        for (int i : pc.cut.node(cells.back()).conflict)
            if (exact_one(pc.arcs[i])) return true;
        return false;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// facade
// ---------------------------------------------------------------------------

struct ArcStructure::Impl {
    ArcStructureConfig cfg;
    std::vector<Arc2> input;
    StatsReg reg;
    std::array<Part, 2> parts;  // [0] as given, [1] reflected through the origin
    std::vector<int> fallback;
    VertIndex vert;

    Impl(std::vector<Arc2> in, ArcStructureConfig c) : cfg(std::move(c)), input(std::move(in)) {
        parts[1].reflected = true;
        for (int i = 0; i < static_cast<int>(input.size()); ++i) {
            const Arc2& a = input[i];
            if (a.kind == ArcKind::Circle) {
                Rat du(a.xlo - a.center.x), dv(a.xhi - a.center.x);
                bool rat = rat_perfect_sqrt(Rat(a.radius * a.radius - du * du)).has_value() &&
                           rat_perfect_sqrt(Rat(a.radius * a.radius - dv * dv)).has_value();
                if (!rat) {
                    fallback.push_back(i);
                    continue;
                }
            }
            if (a.convex()) {
                parts[0].ctx.arcs.push_back(a);
                parts[0].ctx.input_idx.push_back(i);
            } else {
                parts[1].ctx.arcs.push_back(a.reflected());
                parts[1].ctx.input_idx.push_back(i);
            }
        }
        build_part(parts[0], cfg, &reg);
        build_part(parts[1], cfg, &reg);
        vert.init(input);
    }

    static Point2 reflect(const Point2& p) { return Point2(Rat(-p.x), Rat(-p.y)); }
    static Ray2 reflect(const Ray2& r) {
        return Ray2(reflect(r.apex), Vec2(Rat(-r.dir.x), Rat(-r.dir.y)));
    }

    LineDecomp line_hits(const Rat& a, const Rat& b) const {
        LineDecomp out;
        for (const Part& pt : parts) {
            if (pt.empty()) continue;
            Rat bb = pt.reflected ? Rat(-b) : b;
            std::vector<int> path = pt.line_cut->locate(Point2(a, bb));
            for (int id : path)
                if (!pt.canon_input[id].empty()) out.canonical.push_back(&pt.canon_input[id]);
            Line2 line(a, bb);
            for (int j : pt.line_cut->node(path.back()).conflict)
                if (line_meets_arc(pt.ctx.arcs[j], line))
                    out.singles.push_back(pt.ctx.input_idx[j]);
        }
        Line2 line(a, b);
        for (int i : fallback)
            if (line_meets_arc(input[i], line)) out.singles.push_back(i);
        std::sort(out.singles.begin(), out.singles.end());
        out.hit = !out.canonical.empty() || !out.singles.empty();
        return out;
    }

    LineDecomp line_hits_vertical(const Rat& x) const {
        LineDecomp out;
        vert.stab(x, out.singles);
        std::sort(out.singles.begin(), out.singles.end());
        out.hit = !out.singles.empty();
        return out;
    }

    bool part_ray_local(const Part& pt, const Ray2& ray) const {
        if (pt.empty()) return false;
        RayQuery Q;
        Q.ctx = &pt.ctx;
        Q.ray = ray;
        Q.a = Rat(ray.dir.y / ray.dir.x);
        Q.b = Rat(ray.apex.y - Q.a * ray.apex.x);
        Q.rightward = ray.dir.x > 0;
        std::vector<int> path = pt.line_cut->locate(Point2(Q.a, Q.b));
        for (int id : path)
            if (Q.run(part_bundle(pt, id))) return true;
        for (int j : pt.line_cut->node(path.back()).conflict)
            if (ray_meets_arc(pt.ctx.arcs[j], ray)) return true;
        return false;
    }

    bool part_segment_local(const Part& pt, const Point2& p, const Point2& q) const {
        if (pt.empty()) return false;
        SegQuery Q;
        Q.ctx = &pt.ctx;
        Q.p = p;
        Q.q = q;
        Q.a = Rat((q.y - p.y) / (q.x - p.x));
        Q.b = Rat(p.y - Q.a * p.x);
        Rat w(1 + Q.a * Q.a);
        Q.neg_lambda = RootExt(Rat(0), Rat(-Q.a / w), w);
        std::vector<int> path = pt.line_cut->locate(Point2(Q.a, Q.b));
        for (int id : path)
            if (Q.run(part_bundle(pt, id))) return true;
        for (int j : pt.line_cut->node(path.back()).conflict)
            if (seg_meets_arc(pt.ctx.arcs[j], p, q)) return true;
        return false;
    }

    bool ray_hits(const Ray2& ray) const {
        if (ray.dir.is_zero() || ray.dir.x == 0) {
            std::vector<int> ids;
            vert.stab(ray.apex.x, ids);
            for (int i : ids) {
                if (ray.dir.is_zero()) {
                    if (point_vs_arc(input[i], ray.apex) == 0) return true;
                } else if (ray_meets_arc(input[i], ray)) {
                    return true;
                }
            }
            return false;
        }
        for (const Part& pt : parts)
            if (part_ray_local(pt, pt.reflected ? reflect(ray) : ray)) return true;
        for (int i : fallback)
            if (ray_meets_arc(input[i], ray)) return true;
        return false;
    }

    bool segment_hits(const Point2& p0, const Point2& q0) const {
        if (p0 == q0) {
            std::vector<int> ids;
            vert.stab(p0.x, ids);
            for (int i : ids)
                if (point_vs_arc(input[i], p0) == 0) return true;
            return false;
        }
        if (p0.x == q0.x) {
            std::vector<int> ids;
            vert.stab(p0.x, ids);
            for (int i : ids)
                if (seg_meets_arc(input[i], p0, q0)) return true;
            return false;
        }
        const Point2& p = p0.x < q0.x ? p0 : q0;
        const Point2& q = p0.x < q0.x ? q0 : p0;
        for (const Part& pt : parts) {
            if (pt.reflected) {
                if (part_segment_local(pt, reflect(q), reflect(p))) return true;
            } else {
                if (part_segment_local(pt, p, q)) return true;
            }
        }
        for (int i : fallback)
            if (seg_meets_arc(input[i], p, q)) return true;
        return false;
    }

    struct WalkHit {
        RootExt t;
        int input_idx = -1;
    };

    bool cand_better(const WalkHit& c, const std::optional<WalkHit>& best) const {
        if (!best) return true;
        int cmp = compare(c.t, best->t);
        if (cmp != 0) return cmp < 0;
        return input[c.input_idx].id < input[best->input_idx].id;
    }

    // Walk the trapezoids of the part's graph cutting along the ray. Windows
    // (t_cur, t_exit] tile the ray inside one cell each; a window is resolved
    // against the cell's conflict list only after an emptiness test on a
    // rational segment slightly covering it reports a hit.
    std::optional<WalkHit> walk_part(const Part& pt, const Ray2& ray) const {
        if (pt.empty()) return std::nullopt;
        const TrapCutting& cut = part_walk(pt);
        Rat dx = ray.dir.x, dy = ray.dir.y;
        Rat inv_dx(Rat(1) / dx);
        auto point_at = [&](const Rat& t) {
            return Point2(Rat(ray.apex.x + t * dx), Rat(ray.apex.y + t * dy));
        };
        auto boundary_params = [&](const TrapRegion& rg) {
            std::vector<RootExt> out;
            if (rg.lo) out.push_back((*rg.lo - ray.apex.x) * inv_dx);
            if (rg.hi) out.push_back((*rg.hi - ray.apex.x) * inv_dx);
            if (rg.floor)
                for (RootExt& t : ray_arc_params(*rg.floor->arc, ray)) out.push_back(std::move(t));
            if (rg.ceil)
                for (RootExt& t : ray_arc_params(*rg.ceil->arc, ray)) out.push_back(std::move(t));
            return out;
        };

        RootExt t_cur{Rat(0)};
        Rat ra_cur(0);
        for (int iter = 0; iter < 100000; ++iter) {
            // probe strictly beyond t_cur, strictly inside its cell, and off
            // every boundary parameter of that cell
            Rat t_p = rational_between(t_cur, t_cur + Rat(1));
            int leaf = -1;
            std::vector<RootExt> cands;
            for (int guard = 0; guard < 10000; ++guard) {
                leaf = cut.locate(point_at(t_p)).back();
                cands = boundary_params(cut.node(leaf).region);
                RootExt tp_ext((t_p));
                bool on_boundary = false;
                std::optional<RootExt> entry;
                for (const RootExt& c : cands) {
                    int cmp = compare(c, tp_ext);
                    if (cmp == 0) on_boundary = true;
                    if (cmp < 0 && (!entry || compare(c, *entry) > 0)) entry = c;
                }
                if (on_boundary) {
                    t_p = rational_between(t_cur, tp_ext);
                    continue;
                }
                if (entry && compare(*entry, t_cur) > 0) {
                    t_p = rational_between(t_cur, *entry);
                    continue;
                }
                break;
            }
            RootExt tp_ext((t_p));
            std::optional<RootExt> exit;
            for (const RootExt& c : cands)
                if (compare(c, tp_ext) > 0 && (!exit || compare(c, *exit) < 0)) exit = c;

            bool probe_hit;
            if (exit) {
                Rat t_b = rational_between(*exit, *exit + Rat(1));
                Point2 sp = point_at(ra_cur), sq = point_at(t_b);
                if (sq.x < sp.x) std::swap(sp, sq);
                probe_hit = part_segment_local(pt, sp, sq);
            } else {
                probe_hit = part_ray_local(pt, Ray2(point_at(ra_cur), ray.dir));
            }
            if (probe_hit) {
                std::optional<WalkHit> best;
                for (int j : cut.node(leaf).conflict) {
                    for (const RootExt& t : ray_arc_params(pt.ctx.arcs[j], ray)) {
                        int cl = compare(t, t_cur);
                        bool in_window = cl > 0 || (cl == 0 && sign(t_cur) == 0);
                        if (in_window && exit && compare(t, *exit) > 0) in_window = false;
                        if (!in_window) continue;
                        WalkHit c{t, pt.ctx.input_idx[j]};
                        if (cand_better(c, best)) best = c;
                    }
                }
                if (best) return best;
            }
            if (!exit) return std::nullopt;
            t_cur = *exit;
            ra_cur = t_p;
        }
        throw std::logic_error("arc shooting walk did not terminate");
    }

    std::optional<ArcHit> ray_shoot(const Ray2& ray) const {
        std::optional<WalkHit> best;
        auto offer = [&](int idx) {
            std::optional<ArcHit> h = ray_arc_first(input[idx], ray);
            if (h) {
                WalkHit c{h->t, idx};
                if (cand_better(c, best)) best = c;
            }
        };
        if (ray.dir.is_zero()) {
            std::vector<int> ids;
            vert.stab(ray.apex.x, ids);
            int pick = -1;
            for (int i : ids)
                if (point_vs_arc(input[i], ray.apex) == 0 &&
                    (pick < 0 || input[i].id < input[pick].id))
                    pick = i;
            if (pick < 0) return std::nullopt;
            ArcHit h;
            h.arc_id = input[pick].id;
            h.t = RootExt(Rat(0));
            h.point = ExtPoint2{RootExt(ray.apex.x), RootExt(ray.apex.y)};
            return h;
        }
        if (ray.dir.x == 0) {
            std::vector<int> ids;
            vert.stab(ray.apex.x, ids);
            for (int i : ids) offer(i);
        } else {
            for (const Part& pt : parts) {
                std::optional<WalkHit> r = walk_part(pt, pt.reflected ? reflect(ray) : ray);
                if (r && cand_better(*r, best)) best = r;
            }
            for (int i : fallback) offer(i);
        }
        if (!best) return std::nullopt;
        std::optional<ArcHit> h = ray_arc_first(input[best->input_idx], ray);
        assert(h && compare(h->t, best->t) == 0);
        return h;
    }

    ArcStructureStats stats() const {
        ArcStructureStats st;
        st.input_arcs = static_cast<int>(input.size());
        st.convex_arcs = static_cast<int>(parts[0].ctx.arcs.size());
        st.concave_arcs = static_cast<int>(parts[1].ctx.arcs.size());
        st.fallback_arcs = static_cast<int>(fallback.size());
        st.envelopes_built = reg.envelopes.load(std::memory_order_relaxed);
        std::lock_guard<std::mutex> lock(reg.mu);
        st.cuttings_built = static_cast<int>(reg.cuts.size());
        for (const TrapCutting* c : reg.cuts) {
            const CuttingStats& cs = c->stats();
            st.bound_violations += cs.bound_violations;
            st.capped_leaves += cs.capped_leaves;
            st.max_leaf_conflict = std::max(st.max_leaf_conflict, cs.max_leaf_conflict);
            st.budget_gap = std::max(st.budget_gap, cs.max_leaf_conflict - cs.leaf_budget);
            if (cs.max_leaf_conflict > cs.leaf_budget) st.leaf_budgets_ok = false;
        }
        return st;
    }
};

ArcStructure::ArcStructure(std::vector<Arc2> arcs, ArcStructureConfig cfg)
    : impl_(std::make_unique<Impl>(std::move(arcs), cfg)) {}

ArcStructure::~ArcStructure() = default;

LineDecomp ArcStructure::line_hits(const Rat& a, const Rat& b) const {
    return impl_->line_hits(a, b);
}

LineDecomp ArcStructure::line_hits_vertical(const Rat& c) const {
    return impl_->line_hits_vertical(c);
}

bool ArcStructure::ray_hits(const Ray2& ray) const { return impl_->ray_hits(ray); }

bool ArcStructure::segment_hits(const Point2& p, const Point2& q) const {
    return impl_->segment_hits(p, q);
}

std::optional<ArcHit> ArcStructure::ray_shoot_arcs(const Ray2& ray) const {
    return impl_->ray_shoot(ray);
}

const std::vector<Arc2>& ArcStructure::arcs() const { return impl_->input; }

ArcStructureStats ArcStructure::stats() const { return impl_->stats(); }

}  // namespace trishoot
