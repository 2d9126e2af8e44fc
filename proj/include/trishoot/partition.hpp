#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "trishoot/cell.hpp"
#include "trishoot/scene.hpp"

namespace trishoot {

// Built lazily by higher layers; the partition tree only holds slots for them.
struct WideStructure;
struct CoplanarSlice;

struct PartitionConfig {
    // Target per-level reduction factor of the narrow-edge crossing count: a
    // node keeps subdividing internally until every child region is crossed
    // by at most (node crossing count) / branch_target edges.
    int branch_target = 8;
    // Nodes with at most this many narrow triangles become leaves.
    int leaf_threshold = 32;
    int max_depth = 16;
    // Number of candidate planes scored per binary split (3 axis medians
    // plus random orientations).
    int cut_candidates = 24;
    std::uint64_t rng_seed = 1;
};

struct PartitionNode {
    Cell cell;
    int depth = 0;
    int node_id = 0;
    // Triangles meeting the closed cell with no edge meeting the open cell.
    std::vector<int> wide_ids;
    // Triangles with at least one edge meeting the open cell.
    std::vector<int> narrow_ids;
    // Planes used by the internal binary subdivision that produced children,
    // in the order they were applied.
    std::vector<Plane3> cutting_planes;
    std::vector<std::unique_ptr<PartitionNode>> children;
    // Set when no candidate plane could split this node although it exceeds
    // the leaf threshold.
    bool forced_leaf = false;
    // Number of triangle edges meeting the open cell.
    int crossing_count = 0;
    // Max crossing count over the children (0 for leaves).
    int max_child_crossing = 0;

    std::shared_ptr<WideStructure> wide_structure;
    // Planar structures for query segments lying inside a cutting plane,
    // keyed by index into cutting_planes. Built lazily under the mutex so
    // concurrent queries stay safe.
    mutable std::mutex coplanar_mu;
    mutable std::map<int, std::shared_ptr<CoplanarSlice>> coplanar_structures;

    bool is_leaf() const { return children.empty(); }
};

// One binary split performed during a node's internal subdivision. Kept for
// offline auditing: all counts are exact and recomputable from region+plane.
struct SplitRecord {
    Cell region;
    Plane3 plane;
    int parent_crossing = 0;  // edges meeting the open region
    int left_crossing = 0;    // edges meeting the open negative-side child
    int right_crossing = 0;
    // Edge portions (clipped to the region) meeting the plane without being
    // contained in it.
    int cut_count = 0;
    int node_depth = 0;
};

struct PartitionStats {
    std::vector<SplitRecord> splits;
    int forced_leaves = 0;
};

struct PartitionTree {
    Scene scene;
    PartitionConfig config;
    std::unique_ptr<PartitionNode> root;
    PartitionStats stats;
    int node_count = 0;
};

struct OutOfBounds : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PartitionTree build_partition(const Scene& scene, const PartitionConfig& config);

// Exact three-way classification of `ids` against a cell: wide (meets the
// closed cell, no edge meets the open cell), narrow (some edge meets the open
// cell), disjoint (the rest). Outputs preserve the order of `ids`.
void classify(const Cell& cell, const Scene& scene, const std::vector<int>& ids,
              std::vector<int>& wide, std::vector<int>& narrow, std::vector<int>& disjoint);

// Sub-segment of a walk, as a closed parameter interval [lo, hi] along e.
struct WalkPiece {
    PartitionNode* child;
    Rat lo, hi;
};
struct CoplanarPiece {
    int plane_index;  // into node.cutting_planes
    Rat lo, hi;
};
struct WalkResult {
    std::vector<WalkPiece> pieces;      // ordered by lo, disjoint open interiors
    std::vector<CoplanarPiece> coplanar;
};

// Partition a segment (inside node's closed cell) among the node's children.
// A segment contained in one of the node's cutting planes is routed entirely
// to the coplanar list instead. On stretches shared by several children the
// lowest-index child wins.
WalkResult segment_cell_walk(const PartitionTree& tree, PartitionNode& node, const Segment3& e);

// Leaf whose closed cell contains p; ties broken by lowest child index.
// Throws OutOfBounds if p lies outside the root cell.
PartitionNode* locate_point(PartitionTree& tree, const Point3& p);

// Per-level node counts, crossing histograms, and wide/narrow totals as a
// JSON document.
std::string partition_stats_json(const PartitionTree& tree);

}  // namespace trishoot
