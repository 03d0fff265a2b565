#pragma once

#include <cstddef>
#include <vector>

#include "forestlab/tree_canon.hpp"

namespace forestlab {

// Exhaustive unlabeled-shape generation is capped here (4766 rooted trees at 12).
inline constexpr std::size_t kShapeGenerationLimit = 12;

// All shapes of exactly the given size, sorted by code. Results are cached
// process-wide; the cache is append-only and guarded by a mutex.
const std::vector<RootedTreeCode>& rooted_trees_of_size(std::size_t n);
const std::vector<UnrootedTreeCode>& unrooted_trees_of_size(std::size_t n);
// Multisets of unrooted trees with this total size; total 0 gives the empty shape.
std::vector<ForestShape> forest_shapes_of_size(std::size_t total);
// Trees with a root and one exit vertex at distance `radius`, with n vertices.
std::vector<HullTreeCode> hull_trees_of_size(std::size_t n, std::size_t radius);

}  // namespace forestlab
