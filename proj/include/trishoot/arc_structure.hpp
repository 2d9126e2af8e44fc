#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "trishoot/arc_cutting.hpp"
#include "trishoot/arcs.hpp"

namespace trishoot {

struct ArcStructureConfig {
    CuttingConfig cutting;   // shared defaults for every internal cutting
    int direct_cutoff = 16;  // sets at or below this size are scanned exactly
};

struct ArcStructureStats {
    int input_arcs = 0;
    int convex_arcs = 0;    // structure-resident as given
    int concave_arcs = 0;   // structure-resident, reflected through the origin
    int fallback_arcs = 0;  // irrational endpoint heights: exact per-query scan
    int cuttings_built = 0;
    int envelopes_built = 0;
    long bound_violations = 0;   // summed over the cuttings built so far
    long capped_leaves = 0;      // leaves frozen by a cutting's node budget
    long max_leaf_conflict = 0;  // worst leaf conflict over built cuttings
    long budget_gap = 0;         // worst per-cutting excess over its leaf budget
    bool leaf_budgets_ok = true;
};

// Result of a line query: the arcs met by the line, reported as pairwise
// disjoint canonical sets plus exactly tested singles. Indices refer to the
// arc vector the structure was built from. Set pointers stay valid for the
// lifetime of the structure.
struct LineDecomp {
    bool hit = false;
    std::vector<const std::vector<int>*> canonical;
    std::vector<int> singles;

    std::size_t count() const {
        std::size_t n = singles.size();
        for (const std::vector<int>* s : canonical) n += s->size();
        return n;
    }
};

// Query structure over x-monotone arcs (segments and circular half-arcs).
// Concave arcs are handled by a reflected copy of the machinery; circular
// arcs whose endpoint heights are irrational fall back to an exact per-query
// scan list (their duals would need nested radicals). Interior levels are
// materialized lazily under internal synchronization, so queries on a const
// structure may run concurrently.
class ArcStructure {
public:
    explicit ArcStructure(std::vector<Arc2> arcs, ArcStructureConfig cfg = ArcStructureConfig{});
    ~ArcStructure();
    ArcStructure(const ArcStructure&) = delete;
    ArcStructure& operator=(const ArcStructure&) = delete;

    // Arcs met by the nonvertical line y = a*x + b.
    LineDecomp line_hits(const Rat& a, const Rat& b) const;
    // Arcs met by the vertical line x = c (x-ordered endpoint index).
    LineDecomp line_hits_vertical(const Rat& c) const;

    // Emptiness tests: does the ray / closed segment meet any arc?
    bool ray_hits(const Ray2& ray) const;
    bool segment_hits(const Point2& p, const Point2& q) const;

    // First arc hit along the ray; ties resolve to the smallest id, matching
    // the reference scan.
    std::optional<ArcHit> ray_shoot_arcs(const Ray2& ray) const;

    const std::vector<Arc2>& arcs() const;
    ArcStructureStats stats() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace trishoot
