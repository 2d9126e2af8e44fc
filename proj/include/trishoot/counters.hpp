#pragma once

#include <cstdint>

namespace trishoot {

// Per-query work counters. Workers own one each; batch runners merge them.
// Counting never influences answers (verify runs are counter-blind).
struct QueryStats {
    std::uint64_t tri_tests = 0;    // exact segment/triangle intersection tests
    std::uint64_t plane_tests = 0;  // plane crossing tests in wide-structure shooting
    std::uint64_t arc_tests = 0;    // exact arc predicate evaluations
    std::uint64_t cells_visited = 0;

    std::uint64_t primitive_tests() const { return tri_tests + plane_tests; }

    QueryStats& operator+=(const QueryStats& o) {
        tri_tests += o.tri_tests;
        plane_tests += o.plane_tests;
        arc_tests += o.arc_tests;
        cells_visited += o.cells_visited;
        return *this;
    }
};

}  // namespace trishoot
