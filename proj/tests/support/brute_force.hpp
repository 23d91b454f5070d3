#pragma once

// Test-side reference computations, written independently of the library's
// Dijkstra and tree code. Only the Graph container is shared.

#include <vector>

#include "ssdso/graph.hpp"
#include "ssdso/shortest_path_tree.hpp"

namespace ref {

using ssdso::Dist;
using ssdso::EdgeId;
using ssdso::Vertex;

/// O(n^2) array Dijkstra on g minus an edge and/or a vertex.
std::vector<Dist> distances(const ssdso::Graph& g, Vertex s, EdgeId banned_edge = ssdso::kNoEdge,
                            Vertex banned_vertex = ssdso::kNoVertex);

/// Bellman-Ford style relaxation until fixpoint, O(n m).
std::vector<Dist> relaxation(const ssdso::Graph& g, Vertex s, EdgeId banned_edge = ssdso::kNoEdge,
                             Vertex banned_vertex = ssdso::kNoVertex);

/// Minimum weight over all simple s-t paths by exhaustive DFS; tiny graphs only.
Dist all_paths_min(const ssdso::Graph& g, Vertex s, Vertex t, EdgeId banned_edge = ssdso::kNoEdge,
                   Vertex banned_vertex = ssdso::kNoVertex);

/// Parent pointers (independent walk): true iff a == b or a is an ancestor of b.
bool walk_ancestor(const ssdso::ShortestPathTree& tree, Vertex a, Vertex b);

// Distances after every single failure on the tree, keyed by the failing
// element: the lower endpoint of a tree edge (edge mode) or the vertex.
struct FailureTable {
    ssdso::FailureMode mode;
    std::vector<std::vector<Dist>> after;  // after[v] empty for s and unreachable v
};

FailureTable failure_table(const ssdso::Graph& g, const ssdso::ShortestPathTree& tree, ssdso::FailureMode mode);

/// Weight of a vertex path in g avoiding the failure, or kInf if it is not a valid path there.
Dist path_weight(const ssdso::Graph& g, const std::vector<Vertex>& path, EdgeId banned_edge,
                 Vertex banned_vertex = ssdso::kNoVertex);

}  // namespace ref
