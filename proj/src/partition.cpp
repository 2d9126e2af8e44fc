#include "trishoot/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include "json.hpp"

namespace trishoot {

namespace {

const Rat& pcoord(const Point3& p, int k) { return k == 0 ? p.x : (k == 1 ? p.y : p.z); }

// Sign of h.eval(p): double prefilter with a conservative error bound, exact
// rational fallback when inconclusive.
int plane_sign(const Plane3& h, const Point3& p) {
    double t0 = to_double(h.n.x) * p.ax;
    double t1 = to_double(h.n.y) * p.ay;
    double t2 = to_double(h.n.z) * p.az;
    double t3 = to_double(h.off);
    double d = t0 + t1 + t2 - t3;
    double err = (std::abs(t0) + std::abs(t1) + std::abs(t2) + std::abs(t3)) * 1e-12 + 1e-280;
    if (d > err) return 1;
    if (d < -err) return -1;
    return sign(h.eval(p));
}

struct EdgeRef {
    int tri = 0;
    int k = 0;  // edge (v[k], v[(k+1)%3])
};

// An edge clipped to a region, kept only while it meets the open region.
struct Portion {
    int edge = 0;  // index into the node's edge list
    Point3 a, b;
};

struct Region {
    Cell cell;
    std::vector<Portion> portions;
};

// Clipped sub-segment of [a,b] meeting the open cell, or nullopt. Matches
// Cell::edge_meets_open (closed clip, then a strict midpoint test).
std::optional<std::pair<Point3, Point3>> open_portion(const Cell& cell, const Point3& a,
                                                      const Point3& b) {
    auto iv = cell.clip_segment(a, b);
    if (!iv || !(iv->first < iv->second)) return std::nullopt;
    Rat mid((iv->first + iv->second) / 2);
    if (!cell.strictly_contains(point_at(a, b, mid))) return std::nullopt;
    return std::make_pair(point_at(a, b, iv->first), point_at(a, b, iv->second));
}

struct Builder {
    const Scene& scene;
    const PartitionConfig& cfg;
    std::mt19937_64 rng;
    PartitionStats stats;
    int node_count = 0;

    long rng_small(long lo, long hi) {  // uniform-ish, deterministic across platforms
        return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
    }

    // Best valid candidate plane for a region, or nullopt. Validity: the
    // plane cuts the region's interior, each fully-strict side holds at most
    // half the portions, and both children end up strictly smaller. Score is
    // max(strict side sizes) + cut count, ties to the earliest candidate.
    std::optional<Plane3> choose_plane(const Region& r, int& out_cut) {
        const int er = static_cast<int>(r.portions.size());
        std::vector<Plane3> cands;
        cands.reserve(static_cast<size_t>(std::max(cfg.cut_candidates, 3)));
        for (int axis = 0; axis < 3; axis++) {
            std::vector<Rat> vals;
            vals.reserve(2 * static_cast<size_t>(er));
            for (const Portion& p : r.portions) {
                vals.push_back(pcoord(p.a, axis));
                vals.push_back(pcoord(p.b, axis));
            }
            // Average of the two middle values: balances endpoints like a
            // median but rarely passes exactly through a data vertex.
            size_t lower = vals.size() / 2 - 1;
            std::nth_element(vals.begin(), vals.begin() + static_cast<long>(lower), vals.end());
            Rat med((vals[lower] + *std::min_element(vals.begin() + static_cast<long>(lower) + 1,
                                                     vals.end())) /
                    2);
            Vec3 n{Rat(axis == 0 ? 1 : 0), Rat(axis == 1 ? 1 : 0), Rat(axis == 2 ? 1 : 0)};
            cands.push_back(Plane3{n, med});
        }
        for (int i = 3; i < cfg.cut_candidates; i++) {
            Vec3 n;
            do {
                n = Vec3{Rat(rng_small(-4, 4)), Rat(rng_small(-4, 4)), Rat(rng_small(-4, 4))};
            } while (sign(n.x) == 0 && sign(n.y) == 0 && sign(n.z) == 0);
            // Anchor at a portion midpoint: strictly inside the region, and
            // never a data vertex, which keeps boundary incidences rare.
            const Portion& p = r.portions[rng() % static_cast<unsigned long>(er)];
            Point3 q(Rat((p.a.x + p.b.x) / 2), Rat((p.a.y + p.b.y) / 2), Rat((p.a.z + p.b.z) / 2));
            cands.push_back(Plane3{n, dot(n, q - Point3())});
        }

        int best = -1, best_score = std::numeric_limits<int>::max(), best_cut = 0;
        for (size_t ci = 0; ci < cands.size(); ci++) {
            const Plane3& h = cands[ci];
            if (!plane_cuts_cell(r.cell, h)) continue;
            int neg = 0, pos = 0, cut = 0;
            for (const Portion& p : r.portions) {
                int sa = plane_sign(h, p.a), sb = plane_sign(h, p.b);
                if (sa < 0 && sb < 0) neg++;
                else if (sa > 0 && sb > 0) pos++;
                else if (sa != 0 || sb != 0) cut++;  // meets h without lying in it
            }
            int mx = std::max(neg, pos);
            if (2 * mx > er) continue;
            if (mx + cut >= er) continue;
            int score = mx + cut;
            if (score < best_score) {
                best = static_cast<int>(ci);
                best_score = score;
                best_cut = cut;
            }
        }
        if (best < 0) return std::nullopt;
        out_cut = best_cut;
        return cands[static_cast<size_t>(best)];
    }

    std::unique_ptr<PartitionNode> build_node(Cell cell, const std::vector<int>& candidate_ids,
                                              int depth) {
        auto node = std::make_unique<PartitionNode>();
        node->cell = std::move(cell);
        node->cell.depth = depth;
        node->depth = depth;
        node->node_id = node_count++;
        std::vector<int> disjoint;
        classify(node->cell, scene, candidate_ids, node->wide_ids, node->narrow_ids, disjoint);

        std::vector<EdgeRef> edges;
        Region first;
        first.cell = node->cell;
        for (int id : node->narrow_ids) {
            const Triangle3& t = scene.tris[static_cast<size_t>(id)];
            for (int k = 0; k < 3; k++) {
                auto p = open_portion(node->cell, t.v[static_cast<size_t>(k)],
                                      t.v[static_cast<size_t>((k + 1) % 3)]);
                if (p) {
                    first.portions.push_back({static_cast<int>(edges.size()), p->first, p->second});
                    edges.push_back({id, k});
                }
            }
        }
        const int total_crossing = static_cast<int>(first.portions.size());
        node->crossing_count = total_crossing;
        if (static_cast<int>(node->narrow_ids.size()) <= cfg.leaf_threshold ||
            depth >= cfg.max_depth || total_crossing == 0) {
            return node;
        }

        // Internal binary subdivision until every region is crossed by at
        // most total_crossing / branch_target edges (or no further valid
        // split exists). Processing order is FIFO for determinism.
        std::vector<Region> regions;
        regions.push_back(std::move(first));
        std::vector<Region> done;
        const int split_cap = 4 * cfg.branch_target;
        int splits = 0;
        size_t head = 0;
        while (head < regions.size()) {
            Region r = std::move(regions[head++]);
            const int er = static_cast<int>(r.portions.size());
            if (static_cast<long>(er) * cfg.branch_target <= total_crossing || er <= 1 ||
                splits >= split_cap) {
                done.push_back(std::move(r));
                continue;
            }
            int cut = 0;
            auto plane = choose_plane(r, cut);
            if (!plane) {
                if (splits == 0) {
                    node->forced_leaf = true;
                    stats.forced_leaves++;
                    return node;
                }
                done.push_back(std::move(r));
                continue;
            }
            auto halves = split_cell(r.cell, *plane);
            Region rn, rp;
            rn.cell = std::move(halves.first);
            rp.cell = std::move(halves.second);
            for (const Portion& p : r.portions) {
                const EdgeRef& e = edges[static_cast<size_t>(p.edge)];
                const Triangle3& t = scene.tris[static_cast<size_t>(e.tri)];
                const Point3& ea = t.v[static_cast<size_t>(e.k)];
                const Point3& eb = t.v[static_cast<size_t>((e.k + 1) % 3)];
                if (auto q = open_portion(rn.cell, ea, eb))
                    rn.portions.push_back({p.edge, q->first, q->second});
                if (auto q = open_portion(rp.cell, ea, eb))
                    rp.portions.push_back({p.edge, q->first, q->second});
            }
            stats.splits.push_back({r.cell, *plane, er, static_cast<int>(rn.portions.size()),
                                    static_cast<int>(rp.portions.size()), cut, depth});
            node->cutting_planes.push_back(*plane);
            splits++;
            regions.push_back(std::move(rn));
            regions.push_back(std::move(rp));
        }

        std::vector<int> child_candidates;
        child_candidates.reserve(node->wide_ids.size() + node->narrow_ids.size());
        std::merge(node->wide_ids.begin(), node->wide_ids.end(), node->narrow_ids.begin(),
                   node->narrow_ids.end(), std::back_inserter(child_candidates));
        for (Region& r : done) {
            auto ch = build_node(std::move(r.cell), child_candidates, depth + 1);
            node->max_child_crossing = std::max(node->max_child_crossing, ch->crossing_count);
            node->children.push_back(std::move(ch));
        }
        return node;
    }
};

}  // namespace

void classify(const Cell& cell, const Scene& scene, const std::vector<int>& ids,
              std::vector<int>& wide, std::vector<int>& narrow, std::vector<int>& disjoint) {
    wide.clear();
    narrow.clear();
    disjoint.clear();
    for (int id : ids) {
        const Triangle3& t = scene.tris[static_cast<size_t>(id)];
        bool is_narrow = false;
        for (int k = 0; k < 3 && !is_narrow; k++) {
            is_narrow = cell.edge_meets_open(t.v[static_cast<size_t>(k)],
                                             t.v[static_cast<size_t>((k + 1) % 3)]);
        }
        if (is_narrow) narrow.push_back(id);
        else if (cell.tri_meets_closed(t)) wide.push_back(id);
        else disjoint.push_back(id);
    }
}

PartitionTree build_partition(const Scene& scene, const PartitionConfig& config) {
    if (scene.tris.empty()) throw std::invalid_argument("build_partition: empty scene");
    if (config.branch_target < 2 || config.leaf_threshold < 1 || config.max_depth < 1 ||
        config.cut_candidates < 3) {
        throw std::invalid_argument("build_partition: invalid config");
    }
    PartitionTree tree;
    tree.scene = scene;
    tree.config = config;
    Builder b{tree.scene, tree.config, std::mt19937_64(config.rng_seed), {}, 0};
    std::vector<int> ids(scene.tris.size());
    std::iota(ids.begin(), ids.end(), 0);
    tree.root = b.build_node(cell_from_box(tree.scene.bbox), ids, 0);
    tree.stats = std::move(b.stats);
    tree.node_count = b.node_count;
    return tree;
}

WalkResult segment_cell_walk(const PartitionTree&, PartitionNode& node, const Segment3& e) {
    WalkResult res;
    if (node.is_leaf()) return res;
    for (size_t i = 0; i < node.cutting_planes.size(); i++) {
        const Plane3& h = node.cutting_planes[i];
        if (sign(h.eval(e.a)) == 0 && sign(h.eval(e.b)) == 0) {
            res.coplanar.push_back({static_cast<int>(i), Rat(0), Rat(1)});
            return res;
        }
    }
    struct Interval {
        int child;
        Rat lo, hi;
    };
    std::vector<Interval> ivs;
    for (size_t ci = 0; ci < node.children.size(); ci++) {
        auto iv = node.children[ci]->cell.clip_segment(e.a, e.b);
        if (iv && iv->first < iv->second) ivs.push_back({static_cast<int>(ci), iv->first, iv->second});
    }
    Rat cur(0);
    while (cur < 1) {
        const Interval* pick = nullptr;
        for (const Interval& iv : ivs) {  // ascending child index: lowest wins ties
            if (iv.lo <= cur && cur < iv.hi) {
                pick = &iv;
                break;
            }
        }
        if (!pick) throw std::logic_error("segment_cell_walk: children do not cover the segment");
        res.pieces.push_back({node.children[static_cast<size_t>(pick->child)].get(), cur, pick->hi});
        cur = pick->hi;
    }
    return res;
}

PartitionNode* locate_point(PartitionTree& tree, const Point3& p) {
    PartitionNode* cur = tree.root.get();
    if (!cur || !cur->cell.contains(p)) throw OutOfBounds("locate_point: point outside the root cell");
    while (!cur->is_leaf()) {
        PartitionNode* next = nullptr;
        for (auto& ch : cur->children) {
            if (ch->cell.contains(p)) {
                next = ch.get();
                break;
            }
        }
        if (!next) throw std::logic_error("locate_point: children do not cover the cell");
        cur = next;
    }
    return cur;
}

namespace {
struct LevelAgg {
    int nodes = 0, leaves = 0, forced = 0;
    long narrow_total = 0, wide_total = 0;
    int max_crossing = 0;
    std::vector<int> crossing_counts;
};

void collect_levels(const PartitionNode& n, std::vector<LevelAgg>& lv) {
    if (static_cast<size_t>(n.depth) >= lv.size()) lv.resize(static_cast<size_t>(n.depth) + 1);
    LevelAgg& a = lv[static_cast<size_t>(n.depth)];
    a.nodes++;
    if (n.is_leaf()) a.leaves++;
    if (n.forced_leaf) a.forced++;
    a.narrow_total += static_cast<long>(n.narrow_ids.size());
    a.wide_total += static_cast<long>(n.wide_ids.size());
    a.max_crossing = std::max(a.max_crossing, n.crossing_count);
    a.crossing_counts.push_back(n.crossing_count);
    for (const auto& ch : n.children) collect_levels(*ch, lv);
}
}  // namespace

std::string partition_stats_json(const PartitionTree& tree) {
    std::vector<LevelAgg> lv;
    if (tree.root) collect_levels(*tree.root, lv);
    nlohmann::json levels = nlohmann::json::array();
    for (size_t d = 0; d < lv.size(); d++) {
        levels.push_back({{"level", d},
                          {"nodes", lv[d].nodes},
                          {"leaves", lv[d].leaves},
                          {"forced_leaves", lv[d].forced},
                          {"narrow_total", lv[d].narrow_total},
                          {"wide_total", lv[d].wide_total},
                          {"max_crossing", lv[d].max_crossing},
                          {"crossing_counts", lv[d].crossing_counts}});
    }
    nlohmann::json j{{"node_count", tree.node_count},
                     {"split_count", tree.stats.splits.size()},
                     {"forced_leaves", tree.stats.forced_leaves},
                     {"levels", levels}};
    return j.dump(2);
}

}  // namespace trishoot
