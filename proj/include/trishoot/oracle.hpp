#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trishoot/scene.hpp"

namespace trishoot {

// Brute-force references: deliberately unaccelerated (O(n) / O(n^2) / O(n^3)
// per call) so they stay audit-simple. They are the trust anchor every
// structure is verified against.

// Minimum-t hit over all triangles; ties broken toward the smaller id.
std::optional<HitResult> brute_first_hit(const Scene& scene, const Segment3& e,
                                         QueryStats* stats = nullptr);

// Ascending ids of all triangles meeting the closed segment.
std::vector<int> brute_report(const Scene& scene, const Segment3& e, QueryStats* stats = nullptr);

// All (red index, blue index) pairs of intersecting segments.
std::vector<std::pair<int, int>> brute_line_pairs(const std::vector<Segment3>& red,
                                                  const std::vector<Segment3>& blue);

// Arrangement vertices: triple-plane points interior to all three triangles,
// plus edge-triangle crossing points; deduplicated, lexicographically sorted.
std::vector<Point3> brute_arrangement_vertices(const Scene& scene);

}  // namespace trishoot
