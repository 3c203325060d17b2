#pragma once

#include "ksrd/graph.hpp"
#include "ksrd/solution.hpp"

namespace ksrd {

/// Coverage-based greedy construction. Repeatedly labels the not-yet-labeled
/// node with the largest number of uncovered closed neighbors (ties prefer
/// uncovered nodes, then the smallest id) until every node is covered.
Solution greedy(const Graph& g, int k);

} // namespace ksrd
