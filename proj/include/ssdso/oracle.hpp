#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ssdso/graph.hpp"
#include "ssdso/pivots.hpp"
#include "ssdso/shortest_path_tree.hpp"
#include "ssdso/ssrp.hpp"

namespace ssdso {

// One maximal equal-distance run of far-II elements on P(s, x).
struct BreakRecord {
    Dist key = 0;            // d(s, upper endpoint of the run's first element)
    Dist dist = kInf;        // replacement distance shared by the run
    Vertex depth = 0;        // depth of the run's first element (the distinguished one)
    Vertex pred = kNoVertex; // last(t, e*) when path reporting is enabled
};

/*
 * Single-source distance sensitivity oracle.
 *
 * Every target t is served relative to its anchor x = anchor[t]: failures
 * strictly below x are answered from the near row of t, failures on P(s, x)
 * from the far-I row of x combined with the break-point records of t.
 */
struct Oracle {
    FailureMode mode = FailureMode::edge;
    std::uint64_t n = 0, m = 0, max_weight = 1;
    Vertex source = 0;
    std::size_t block = 1;  // L
    bool dense = false;     // M > n: a single pivot and full rows
    bool has_paths = false;

    ShortestPathTree tree;
    PivotAssignment pivots;
    std::vector<Vertex> anchor;

    std::vector<std::size_t> near_offsets;  // n + 1
    std::vector<Dist> near_dist;            // element k of t at near_offsets[t] + k - depth(anchor[t]) - 1
    std::vector<Vertex> near_pred;          // parallel to near_dist when has_paths

    std::vector<Vertex> far_slot;           // per vertex: index into pivots.pivots, or kNoVertex
    std::vector<std::size_t> far_offsets;   // per slot + 1
    std::vector<Dist> far_dist;             // d(s, x, element k) at far_offsets[slot] + k - 1

    std::vector<std::size_t> break_offsets; // n + 1
    std::vector<BreakRecord> breaks;

    std::vector<Vertex> edge_child;  // per edge id: lower endpoint if it is a tree edge

    /// Recomputes anchor, far_slot and edge_child from the stored arrays.
    void rebuild_indexes();

    std::span<const BreakRecord> break_points(Vertex t) const noexcept {
        return {breaks.data() + break_offsets[t], break_offsets[t + 1] - break_offsets[t]};
    }
    /// Far elements served through anchor x: depth(x) in both modes.
    std::size_t far_length(Vertex x) const noexcept;
};

enum class CaseTag : std::uint8_t { irrelevant = 0, near = 1, far_I = 2, far_II = 3 };

std::string_view to_string(CaseTag tag) noexcept;

struct QueryAnswer {
    Dist distance = kInf;
    CaseTag case_tag = CaseTag::irrelevant;

    friend bool operator==(const QueryAnswer&, const QueryAnswer&) = default;
};

/// Primitive-operation instrumentation for query paths.
struct QueryCounter {
    std::uint64_t ops = 0;
    std::uint64_t max_ops = 0;
    std::uint64_t queries = 0;

    void finish(std::uint64_t before) noexcept {
        ++queries;
        max_ops = std::max(max_ops, ops - before);
    }
};

/// Default block parameter: ceil(sqrt(n)).
std::size_t default_block(std::size_t n);

/// Linear scan of the far elements of P(s, x) for target t. `far_row` holds
/// d(s, x, .) and `ssrp_row` d(s, t, .), both over the elements of P(s, x)
/// (in vertex mode the last element, x itself, has no far-I value).
/// Throws ContractError on mismatched rows or increasing far-II distances.
std::vector<BreakRecord> scan_break_points(const ShortestPathTree& tree, FailureMode mode, Vertex t, Vertex x,
                                           std::span<const Dist> far_row, std::span<const Dist> ssrp_row);

/// Maximum break-point list length permitted for the mode: 3 sqrt(Mn) or 5 sqrt(Mn).
double break_point_bound(FailureMode mode, std::uint64_t n, std::uint64_t max_weight);

/// Assembles the oracle from SSRP output. block = 0 selects ceil(sqrt(n)),
/// or dense rows (block n) when M > n; an explicit block is always honoured.
Oracle build_oracle(const Graph& g, const ShortestPathTree& tree, const SsrpTable& ssrp, std::size_t block = 0);

/// Edge-failure query by edge id. Throws InputError on invalid ids or a vertex-mode oracle.
QueryAnswer query_distance(const Oracle& o, Vertex t, EdgeId e);
/// Same query with the failing edge given by endpoints; a non-edge is irrelevant.
QueryAnswer query_distance(const Oracle& o, Vertex t, Vertex u, Vertex v);
/// Vertex-failure query. Throws InputError for v = s or an edge-mode oracle.
QueryAnswer query_distance_vertex(const Oracle& o, Vertex t, Vertex v);

/// Query with the failure given by the depth-addressing vertex: in edge mode
/// the lower endpoint of the failing tree edge, in vertex mode the failing
/// vertex. kNoVertex means a failure off the tree.
QueryAnswer query_element(const Oracle& o, Vertex t, Vertex elem);

/// Adds last(t, e) for every near element and every break-point record.
/// Throws ContractError if the oracle does not match the graph.
void augment_path_reporting(const Graph& g, Oracle& o);

/// Replacement path from s to t avoiding the failure, as a vertex list.
/// Throws InputError if the replacement distance is infinite, ContractError
/// if the oracle lacks predecessors.
std::vector<Vertex> report_path(const Oracle& o, Vertex t, EdgeId e);
std::vector<Vertex> report_path_vertex(const Oracle& o, Vertex t, Vertex v);

}  // namespace ssdso
