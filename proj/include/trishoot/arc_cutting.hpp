#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "trishoot/arcs.hpp"
#include "trishoot/root_ext.hpp"

namespace trishoot {

// One boundary curve in a cutting plane. Four families cover every structure
// in this library:
//   RLine   y = m*x + c
//   Branch  y = -bx*x + by + sgn*br*sqrt(1 + x^2)   (tangency curves in the
//           line-parameter plane)
//   Graph   y = arc height over [arc.ux, arc.vx]
//   VLine   x = m (full vertical line; conservative boundary, conflicts only)
struct CutCurve {
    enum class Kind { RLine, Branch, Graph, VLine };
    Kind kind = Kind::RLine;
    Rat m, c;                   // RLine slope/intercept; VLine keeps x in m
    Rat bx, by, br;             // Branch parameters
    int sgn = 0;                // Branch radical sign (-1 or +1)
    const Arc2* arc = nullptr;  // Graph source (pointer must outlive the cutting)

    static CutCurve rline(const Rat& m, const Rat& c);
    static CutCurve branch(const Rat& bx, const Rat& by, const Rat& br, int sgn);
    static CutCurve graph(const Arc2* a);
    static CutCurve vline(const Rat& x);
};

// Geometric identity (same function with the same domain).
bool curve_same(const CutCurve& a, const CutCurve& b);

// x-interval where the curve has a graph; nullopt side = unbounded.
struct XInterval {
    std::optional<Rat> lo, hi;
};
XInterval curve_domain(const CutCurve& c);

// Value at rational x inside the domain (not for VLine).
RootExt curve_eval(const CutCurve& c, const Rat& x);
// Value at a one-radical x; RLine only (other families would need nested
// radicals, and no caller requires them).
RootExt curve_eval_ext(const CutCurve& c, const RootExt& x);

// Abscissae where the curves take equal values (touching counts), clipped to
// the closed intersection of their domains, ascending, deduplicated.
// Supported pairs: {RLine,Branch}x{RLine,Branch}, GraphxGraph, GraphxRLine.
// Identical curves report no crossings (no order change).
std::vector<RootExt> curve_cross_xs(const CutCurve& a, const CutCurve& b);

// Closed trapezoidal region: x in [lo, hi], floor <= y <= ceil.
struct TrapRegion {
    std::optional<RootExt> lo, hi;
    std::optional<CutCurve> floor, ceil;
};

// Does the curve meet the closed trapezoid? (VLine: x-interval test only.)
bool curve_crosses_trap(const CutCurve& c, const TrapRegion& t);

// Rational x strictly inside (lo, hi); unbounded sides allowed.
Rat probe_x_in(const std::optional<RootExt>& lo, const std::optional<RootExt>& hi);
// Rational point strictly inside the trapezoid's interior.
Point2 probe_point_in(const TrapRegion& t);

struct CuttingConfig {
    int leaf_max = 24;     // stop refining at or below this conflict size
    int branch = 4;        // per-level conflict shrink factor
    int sample_arcs = 5;   // base sample size, doubled per retry
    int sample_cap = 96;   // retries never sample more regions than this
    int max_attempts = 5;
    int max_depth = 16;
    long max_nodes = 0;    // total node budget; 0 picks one that scales with n
    std::uint64_t seed = 17;
    TrapRegion root;  // optional clip of the root trapezoid (e.g. one strip)
};

struct TrapNode {
    TrapRegion region;
    int parent = -1;
    int depth = 0;
    long bound = 0;  // conflict budget ceil(n / branch^depth)
    int conflict_count = 0;
    bool leaf = true;
    std::vector<int> conflict;                    // kept at leaves
    std::vector<std::vector<int>> added;          // per channel: regions that
                                                  // first fully contain this node
    std::vector<RootExt> walls;                   // slab separators, ascending
    std::vector<std::vector<int>> slab_children;  // child ids per slab, bottom-up
};

struct CuttingStats {
    int nodes = 0;
    int leaves = 0;
    int max_depth = 0;
    int bound_violations = 0;  // nodes that missed their conflict budget
    long capped_leaves = 0;    // leaves frozen by the node budget
    long max_leaf_conflict = 0;
    long leaf_budget = 0;  // refinement target: smallest ceil(n/4^k) <= leaf_max
    std::vector<std::pair<long, long>> by_depth;  // depth -> (max conflict, budget)
};

// Hierarchical trapezoidal cutting over the boundary curves of n planar
// regions. A region stays on child conflict lists while its boundary meets
// the closed child trapezoid; when it leaves, the trapezoid lies entirely
// inside or outside the region (closed-crossing semantics keep this true for
// boundary query points), and fully containing regions are appended to the
// child's per-channel `added` lists at that first node. Along any root-leaf
// path the added lists are pairwise disjoint.
class TrapCutting {
  public:
    using CurvesOf = std::function<std::vector<CutCurve>(int)>;
    using Contains = std::function<bool(int, const Point2&)>;

    TrapCutting(int n, const CurvesOf& curves_of, std::vector<Contains> channels,
                CuttingConfig cfg);

    const TrapNode& node(int id) const { return nodes_[id]; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int channel_count() const { return static_cast<int>(channels_.size()); }
    // Root-to-leaf ids of closed trapezoids containing the point.
    std::vector<int> locate(const Point2& p) const;
    // Point location with a one-radical abscissa (RLine-only cuttings).
    std::vector<int> locate_ext(const RootExt& x, const Rat& y) const;
    bool lines_only() const { return lines_only_; }
    const CuttingStats& stats() const { return stats_; }

  private:
    struct TrapDraft {
        TrapRegion region;
        std::vector<int> conflict;
    };
    struct Subdivision {
        std::vector<RootExt> walls;
        std::vector<TrapDraft> traps;
        std::vector<std::vector<int>> slab_traps;  // indices into traps
        long max_conflict = 0;
    };

    void build(int id, std::vector<int> conflict);
    Subdivision subdivide(const TrapRegion& region, const std::vector<int>& conflict,
                          const std::vector<int>& sample) const;
    bool region_crossed(int arc, const TrapRegion& t) const;
    int child_in_slab(const TrapNode& nd, int slab, const Rat& x, const Rat& y) const;

    std::vector<std::vector<CutCurve>> curves_;  // per region
    std::vector<Contains> channels_;
    CuttingConfig cfg_;
    std::deque<TrapNode> nodes_;
    std::mt19937_64 rng_;
    CuttingStats stats_;
    bool lines_only_ = true;
    long thresh_ = 1;    // leaf refinement target
    long node_cap_ = 0;  // hard budget on total nodes
};

}  // namespace trishoot
