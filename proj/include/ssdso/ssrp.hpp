#pragma once

#include <span>
#include <vector>

#include "ssdso/graph.hpp"
#include "ssdso/shortest_path_tree.hpp"

namespace ssdso {

/*
 * Replacement distances for every target t and every failure on P(s, t).
 *
 * Failures are addressed by the depth k of a tree vertex on P(s, t): in edge
 * mode the element at depth k is the tree edge whose lower endpoint has
 * depth k (k = 1..depth(t)); in vertex mode it is the vertex itself
 * (k = 1..depth(t)-1, so s and t are excluded). Unreachable outcomes are
 * stored as kInf.
 */
class SsrpTable {
public:
    SsrpTable() = default;
    SsrpTable(FailureMode mode, Vertex source, std::vector<std::size_t> offsets, std::vector<Dist> values);
    /// Zero-filled table shaped after the tree.
    SsrpTable(FailureMode mode, const ShortestPathTree& tree);

    FailureMode mode() const noexcept { return mode_; }
    Vertex source() const noexcept { return source_; }
    std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

    std::span<const Dist> row(Vertex t) const noexcept {
        return {values_.data() + offsets_[t], offsets_[t + 1] - offsets_[t]};
    }
    std::span<Dist> row(Vertex t) noexcept { return {values_.data() + offsets_[t], offsets_[t + 1] - offsets_[t]}; }
    /// Replacement distance for the element at depth k (1-based) on P(s, t).
    Dist at(Vertex t, std::size_t k) const noexcept { return values_[offsets_[t] + k - 1]; }

    static std::size_t row_length(FailureMode mode, const ShortestPathTree& tree, Vertex t);

private:
    FailureMode mode_ = FailureMode::edge;
    Vertex source_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<Dist> values_;
};

/// One shortest-path computation in G - e per tree edge e.
SsrpTable ssrp_edge_baseline(const Graph& g, const ShortestPathTree& tree);
/// One shortest-path computation in G - v per non-source tree vertex v.
SsrpTable ssrp_vertex_baseline(const Graph& g, const ShortestPathTree& tree);

// Replacement data for a single pair (s, target) along P(s, target).
struct PathReplacementResult {
    struct Entry {
        Dist dist = kInf;
        Vertex divergence = kNoVertex;  // vertex of P(s, target) where the detour starts
        EdgeId crossing = kNoEdge;      // the edge {u', v'} leaving the source side
    };

    Vertex target = kNoVertex;
    std::vector<Vertex> path;     // P(s, target), path[0] = s
    std::vector<Entry> entries;   // entries[k - 1] for the edge whose lower endpoint is path[k]
    ShortestPathTree target_tree; // T_target
    // For every vertex w, the smallest depth index a such that some shortest
    // s-w path meets P(s, target) only at path[0..a]; kNoVertex if unreachable.
    std::vector<Vertex> touch_depth;

    const Entry& at(std::size_t k) const noexcept { return entries[k - 1]; }
};

/// Sweep over crossing edges P(s,u') + {u',v'} + P(v',target) with a heap,
/// O((m + n) log n). Among optimal choices the detour starting closest to s wins.
PathReplacementResult replacements_along_path(const Graph& g, const ShortestPathTree& tree_s, Vertex target);

/// Greedy hitting set: repeatedly takes the vertex covering the most unhit
/// paths (smallest id on ties). Returns the chosen vertices sorted.
/// Throws InputError if some path has fewer than min_length vertices.
std::vector<Vertex> greedy_hitting_set(std::span<const std::vector<Vertex>> paths, std::size_t min_length);

}  // namespace ssdso
