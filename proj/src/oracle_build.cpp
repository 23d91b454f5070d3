#include <cmath>
#include <string>

#include "oracle_internal.hpp"
#include "ssdso/oracle.hpp"
#include "ssdso/parallel.hpp"

namespace ssdso {

std::size_t default_block(std::size_t n) {
    std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    while (r > 1 && (r - 1) * (r - 1) >= n) --r;
    return std::max<std::size_t>(r, 1);
}

double break_point_bound(FailureMode mode, std::uint64_t n, std::uint64_t max_weight) {
    const double c = mode == FailureMode::edge ? 3.0 : 5.0;
    return c * std::sqrt(static_cast<double>(max_weight) * static_cast<double>(n));
}

std::size_t Oracle::far_length(Vertex x) const noexcept { return tree.depth(x); }

void Oracle::rebuild_indexes() {
    anchor = anchor_pivots(tree, pivots);
    far_slot.assign(n, kNoVertex);
    for (std::size_t i = 0; i < pivots.pivots.size(); ++i) far_slot[pivots.pivots[i]] = static_cast<Vertex>(i);
    edge_child.assign(m, kNoVertex);
    for (Vertex v = 0; v < n; ++v)
        if (tree.reachable(v) && v != source) edge_child[tree.parent_edge(v)] = v;
}

std::vector<BreakRecord> scan_break_points(const ShortestPathTree& tree, FailureMode mode, Vertex t, Vertex x,
                                           std::span<const Dist> far_row, std::span<const Dist> ssrp_row) {
    if (!tree.is_ancestor(x, t)) throw ContractError("pivot is not on the root path of the target");
    const std::size_t count = tree.depth(x);
    const std::size_t far_count = mode == FailureMode::edge ? count : (count == 0 ? 0 : count - 1);
    if (far_row.size() != far_count || ssrp_row.size() != count)
        throw ContractError("break-point scan rows do not cover P(s, x)");

    std::vector<BreakRecord> out;
    if (count == 0) return out;
    const std::vector<Vertex> path = tree.root_path(x);
    const Dist to_t = tree.dist(t) - tree.dist(x);
    Dist prev = kInf;
    bool seen = false;
    for (std::size_t k = 1; k <= count; ++k) {
        const Dist via_x = sat_add(k <= far_count ? far_row[k - 1] : kInf, to_t);
        const Dist d = ssrp_row[k - 1];
        if (d >= via_x) continue;
        if (seen && d > prev)
            throw ContractError("far-II distances increase along P(s, x) for target " + std::to_string(t));
        if (!seen || d < prev) out.push_back({tree.dist(path[k - 1]), d, static_cast<Vertex>(k), kNoVertex});
        prev = d;
        seen = true;
    }
    return out;
}

Oracle build_oracle(const Graph& g, const ShortestPathTree& tree, const SsrpTable& ssrp, std::size_t block) {
    const std::size_t n = g.num_vertices();
    const bool dense = block == 0 && g.max_weight() > n;
    if (dense)
        block = n;
    else if (block == 0)
        block = default_block(n);
    Oracle o = detail::assemble_oracle(g, tree, ssrp, block);
    o.dense = dense;
    return o;
}

Oracle detail::assemble_oracle(const Graph& g, const ShortestPathTree& tree, const SsrpTable& ssrp,
                               std::size_t block) {
    const std::size_t n = g.num_vertices();
    if (tree.num_vertices() != n || ssrp.num_vertices() != n || ssrp.source() != tree.source())
        throw ContractError("graph, tree and ssrp table disagree");
    if (block < 1 || block > n) throw InputError("block parameter must lie in [1, n]");

    Oracle o;
    o.mode = ssrp.mode();
    o.n = n;
    o.m = g.num_edges();
    o.max_weight = g.max_weight();
    o.source = tree.source();
    o.block = block;
    o.tree = tree;
    o.pivots = select_pivots(tree, block);
    o.rebuild_indexes();

    o.near_offsets.assign(n + 1, 0);
    for (Vertex t = 0; t < n; ++t) {
        std::size_t len = 0;
        if (tree.reachable(t)) {
            const std::size_t row = SsrpTable::row_length(o.mode, tree, t);
            const std::size_t top = tree.depth(o.anchor[t]);
            len = row > top ? row - top : 0;
        }
        o.near_offsets[t + 1] = o.near_offsets[t] + len;
    }
    o.near_dist.resize(o.near_offsets[n]);
    for (Vertex t = 0; t < n; ++t) {
        if (!tree.reachable(t)) continue;
        const auto row = ssrp.row(t);
        const std::size_t top = tree.depth(o.anchor[t]);
        std::copy(row.begin() + static_cast<std::ptrdiff_t>(std::min(top, row.size())), row.end(),
                  o.near_dist.begin() + static_cast<std::ptrdiff_t>(o.near_offsets[t]));
    }

    o.far_offsets.assign(o.pivots.pivots.size() + 1, 0);
    for (std::size_t i = 0; i < o.pivots.pivots.size(); ++i)
        o.far_offsets[i + 1] = o.far_offsets[i] + ssrp.row(o.pivots.pivots[i]).size();
    o.far_dist.resize(o.far_offsets.back());
    for (std::size_t i = 0; i < o.pivots.pivots.size(); ++i) {
        const auto row = ssrp.row(o.pivots.pivots[i]);
        std::copy(row.begin(), row.end(), o.far_dist.begin() + static_cast<std::ptrdiff_t>(o.far_offsets[i]));
    }

    std::vector<std::vector<BreakRecord>> lists(n);
    parallel_for(n, [&](std::size_t i) {
        const Vertex t = static_cast<Vertex>(i);
        if (!tree.reachable(t) || t == o.source) return;
        const Vertex x = o.anchor[t];
        const auto far = ssrp.row(x);
        lists[t] = scan_break_points(tree, o.mode, t, x, far, ssrp.row(t).first(tree.depth(x)));
    });

    const double bound = break_point_bound(o.mode, n, o.max_weight);
    o.break_offsets.assign(n + 1, 0);
    for (Vertex t = 0; t < n; ++t) {
        if (static_cast<double>(lists[t].size()) > bound)
            throw ContractError("break-point list of target " + std::to_string(t) + " has " +
                                std::to_string(lists[t].size()) + " records, above the bound");
        o.break_offsets[t + 1] = o.break_offsets[t] + lists[t].size();
    }
    o.breaks.reserve(o.break_offsets[n]);
    for (auto& list : lists) o.breaks.insert(o.breaks.end(), list.begin(), list.end());
    return o;
}

}  // namespace ssdso
