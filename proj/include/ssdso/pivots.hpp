#pragma once

#include <vector>

#include "ssdso/shortest_path_tree.hpp"

namespace ssdso {

// Pivot set D with at least one pivot among the last L vertices of every root path.
struct PivotAssignment {
    std::size_t block = 1;         // L
    std::vector<Vertex> pivots;    // in selection order; s is last
    std::vector<Vertex> assigned;  // D[t], the deepest pivot on P(s, t); kNoVertex if unreachable

    bool is_pivot(Vertex v) const noexcept { return assigned[v] == v; }
};

/// Greedy deepest-leaf selection; throws InputError if block < 1.
PivotAssignment select_pivots(const ShortestPathTree& tree, std::size_t block);

/// Pivot anchoring the queries of target t: D[t], except for a pivot t != s,
/// which is anchored at the nearest pivot strictly above it.
std::vector<Vertex> anchor_pivots(const ShortestPathTree& tree, const PivotAssignment& pivots);

}  // namespace ssdso
