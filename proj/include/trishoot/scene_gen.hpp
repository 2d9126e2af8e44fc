#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trishoot/scene.hpp"

namespace trishoot {

// Deterministic scene factory. All coordinates are dyadic-denominator
// rationals derived from raw mt19937_64 draws, so byte-identical output is
// reproducible across platforms for a fixed (kind, n, size, seed).
struct SceneSpec {
    std::string kind = "random-uniform";  // random-uniform | stacked-sheets | clustered | mesh-file
    std::size_t n = 0;
    Rat size = Rat(1);  // triangle extent (scene box is [0,10]^3 for generated kinds)
    std::uint64_t seed = 1;
    std::string mesh_path;  // kind == mesh-file
};

Scene generate_scene(const SceneSpec& spec);

// Query generators over a scene box. Rays start strictly inside the box with
// nonzero dyadic directions; segments join two distinct interior points.
std::vector<Ray3> generate_rays(std::size_t count, const Box3& box, std::uint64_t seed);
std::vector<Segment3> generate_segments(std::size_t count, const Box3& box, std::uint64_t seed);

// Top-to-bottom stabs at random (x, y); long queries for heavy-output tests.
std::vector<Segment3> generate_stabs(std::size_t count, const Box3& box, std::uint64_t seed);

}  // namespace trishoot
