#pragma once

#include <vector>

#include "ssdso/oracle.hpp"

namespace ssdso {

/*
 * Constant-query layout. Pivots are placed every L_c levels; the targets of
 * each anchor are split into groups, and every group shares one list of
 * break-point positions on P(s, x). Each element of P(s, x) stores the index
 * of the nearest shared position at or above it, so a far-II lookup is two
 * array reads.
 */
struct GroupedOracle {
    Oracle base;  // tree, pivots, near and far-I rows; its break-point lists are empty

    std::vector<Vertex> group_of;  // per target, kNoVertex if it has no far region
    std::vector<Vertex> slot_of;   // position of the target inside its group

    std::vector<Vertex> group_anchor;
    std::vector<Vertex> group_size;
    std::vector<std::size_t> union_count;     // shared break-point positions per group
    std::vector<std::size_t> value_offsets;   // per group + 1, union_count * group_size distances
    std::vector<Dist> values;                 // [position][slot]
    std::vector<std::size_t> pointer_offsets; // per group + 1, depth(anchor) entries
    std::vector<Vertex> pointers;             // element k at pointer_offsets[g] + k - 1, kNoVertex if none
};

/// Grouping block: max(1, ceil((n / M)^(1/3))).
std::size_t constant_query_block(std::size_t n, Dist max_weight);

GroupedOracle build_constant_query(const Graph& g, const ShortestPathTree& tree, const SsrpTable& ssrp);

/// O(1) query; counts primitive steps in `counter` when given.
QueryAnswer query_constant(const GroupedOracle& o, Vertex t, EdgeId e, QueryCounter* counter = nullptr);
QueryAnswer query_constant_vertex(const GroupedOracle& o, Vertex t, Vertex v, QueryCounter* counter = nullptr);
/// Failure addressed as in query_element.
QueryAnswer query_constant_element(const GroupedOracle& o, Vertex t, Vertex elem, QueryCounter* counter = nullptr);

}  // namespace ssdso
